use std::cmp::Ordering;

use super::{ArithOp, NumVector};
use crate::bignum::{dot_exact, sum_exact, BigFloat, BigInt, PrecisionContext, Real};
use crate::error::{Error, Result};

/// Row-major matrix of reals with homogeneous element type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumMatrix {
    rows: usize,
    cols: usize,
    elems: Vec<Real>,
}

fn shape(m: &NumMatrix) -> String {
    format!("{}x{}", m.rows, m.cols)
}

impl NumMatrix {
    /// Fills `rows × cols` row by row from `data`; missing trailing entries
    /// are zero.
    pub fn construct(data: &NumVector, rows: usize, cols: usize, ctx: &PrecisionContext) -> Result<NumMatrix> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!(
                "matrix size must be positive, got {rows}x{cols}"
            )));
        }
        let cells = rows
            .checked_mul(cols)
            .ok_or_else(|| Error::Range("matrix too large".into()))?;
        if data.len() > cells {
            return Err(Error::Dimension(format!(
                "{} data elements do not fit a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let zero = if data.is_int() {
            Real::int(0)
        } else {
            Real::Float(BigFloat::zero(ctx))
        };
        let mut elems = data.elems().to_vec();
        elems.resize(cells, zero);
        Ok(NumMatrix { rows, cols, elems })
    }

    fn from_parts(rows: usize, cols: usize, elems: Vec<Real>, ctx: &PrecisionContext) -> Result<NumMatrix> {
        let v = NumVector::from_reals(elems, ctx)?;
        Ok(NumMatrix {
            rows,
            cols,
            elems: v.into_elems(),
        })
    }

    pub fn identity(n: usize) -> NumMatrix {
        let mut elems = vec![Real::int(0); n * n];
        for i in 0..n {
            elems[i * n + i] = Real::int(1);
        }
        NumMatrix { rows: n, cols: n, elems }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Real {
        &self.elems[r * self.cols + c]
    }

    pub fn elems(&self) -> &[Real] {
        &self.elems
    }

    pub fn is_int(&self) -> bool {
        self.elems.first().is_none_or(Real::is_int)
    }

    pub fn row(&self, r: usize) -> &[Real] {
        &self.elems[r * self.cols..(r + 1) * self.cols]
    }

    /// Row-major contents as a vector.
    pub fn flatten(&self) -> NumVector {
        NumVector::from_reals(self.elems.clone(), &PrecisionContext::default())
            .expect("homogeneous elements need no promotion")
    }

    pub fn transpose(&self) -> NumMatrix {
        let mut elems = Vec::with_capacity(self.elems.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                elems.push(self.get(r, c).clone());
            }
        }
        NumMatrix {
            rows: self.cols,
            cols: self.rows,
            elems,
        }
    }

    pub fn zip(&self, op: ArithOp, other: &NumMatrix, ctx: &PrecisionContext) -> Result<NumMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "matrix shapes {} and {} differ for '{}'",
                shape(self),
                shape(other),
                op.symbol()
            )));
        }
        let elems = self
            .elems
            .iter()
            .zip(&other.elems)
            .map(|(a, b)| op.apply(a, b, ctx))
            .collect::<Result<Vec<_>>>()?;
        NumMatrix::from_parts(self.rows, self.cols, elems, ctx)
    }

    pub fn scalar(&self, op: ArithOp, s: &Real, scalar_first: bool, ctx: &PrecisionContext) -> Result<NumMatrix> {
        let elems = self
            .elems
            .iter()
            .map(|e| if scalar_first { op.apply(s, e, ctx) } else { op.apply(e, s, ctx) })
            .collect::<Result<Vec<_>>>()?;
        NumMatrix::from_parts(self.rows, self.cols, elems, ctx)
    }

    /// Matrix product; each entry is an exactly accumulated dot product
    /// rounded once.
    pub fn mul(&self, other: &NumMatrix, ctx: &PrecisionContext) -> Result<NumMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {} by {}",
                shape(self),
                shape(other)
            )));
        }
        let mut elems = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let pairs: Vec<_> = (0..self.cols).map(|k| (self.get(r, k), other.get(k, c))).collect();
                elems.push(dot_exact(&pairs, ctx)?);
            }
        }
        NumMatrix::from_parts(self.rows, other.cols, elems, ctx)
    }

    /// Matrix times column vector.
    pub fn mul_vector(&self, v: &NumVector, ctx: &PrecisionContext) -> Result<NumVector> {
        if self.cols != v.len() {
            return Err(Error::Dimension(format!(
                "cannot multiply {} by a vector of length {}",
                shape(self),
                v.len()
            )));
        }
        let out = (0..self.rows)
            .map(|r| {
                let pairs: Vec<_> = self.row(r).iter().zip(v.elems()).collect();
                Ok(dot_exact(&pairs, ctx)?)
            })
            .collect::<Result<Vec<_>>>()?;
        NumVector::from_reals(out, ctx)
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "{what} needs a square matrix, got {}",
                shape(self)
            )));
        }
        Ok(())
    }

    pub fn trace(&self, ctx: &PrecisionContext) -> Result<Real> {
        self.require_square("trace")?;
        let diag: Vec<Real> = (0..self.rows).map(|i| self.get(i, i).clone()).collect();
        Ok(sum_exact(&diag, ctx)?)
    }

    /// Determinant. Integer matrices use fraction-free elimination and stay
    /// exact; float matrices use the pivot product of partial-pivoting
    /// elimination at guard precision.
    pub fn det(&self, ctx: &PrecisionContext) -> Result<Real> {
        self.require_square("det")?;
        if self.is_int() {
            return Ok(Real::Int(self.det_bareiss()));
        }
        let w = ctx.guarded(2);
        let mut a = self.to_floats(&w)?;
        let n = self.rows;
        let mut det = BigFloat::from_i64(1, &w);
        for col in 0..n {
            let p = pivot_row(&a, n, col);
            if a[p * n + col].is_zero() {
                return Ok(Real::Float(BigFloat::zero(ctx)));
            }
            if p != col {
                swap_rows(&mut a, n, p, col);
                det = det.neg();
            }
            let pivot = a[col * n + col].clone();
            det = det.mul(&pivot, &w)?;
            eliminate_below(&mut a, n, n, col, &w)?;
        }
        Ok(Real::Float(det.round_to(ctx)?))
    }

    fn det_bareiss(&self) -> BigInt {
        let n = self.rows;
        let mut a: Vec<BigInt> = self
            .elems
            .iter()
            .map(|e| e.to_int().expect("integer matrix"))
            .collect();
        let mut sign = false;
        let mut prev = BigInt::from_i64(1);
        for k in 0..n {
            if a[k * n + k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for c in 0..n {
                    a.swap(k * n + c, swap * n + c);
                }
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[i * n + j]
                        .mul(&a[k * n + k])
                        .sub(&a[i * n + k].mul(&a[k * n + j]));
                    a[i * n + j] = v.divrem(&prev).expect("non-zero previous pivot").0;
                }
            }
            prev = a[k * n + k].clone();
        }
        let d = a[n * n - 1].clone();
        if sign {
            d.neg()
        } else {
            d
        }
    }

    /// Inverse by Gauss–Jordan elimination with partial pivoting at guard
    /// precision, rounded once at `ctx`. A pivot that is exactly zero after
    /// pivoting means the matrix is singular.
    pub fn invert(&self, ctx: &PrecisionContext) -> Result<NumMatrix> {
        self.require_square("invert")?;
        let n = self.rows;
        let w = ctx.guarded(2);
        let width = 2 * n;
        let src = self.to_floats(&w)?;
        let mut a = Vec::with_capacity(n * width);
        for r in 0..n {
            a.extend_from_slice(&src[r * n..(r + 1) * n]);
            for c in 0..n {
                a.push(BigFloat::from_i64((r == c) as i64, &w));
            }
        }
        for col in 0..n {
            let p = pivot_row_w(&a, n, width, col);
            if a[p * width + col].is_zero() {
                return Err(Error::SingularMatrix(format!(
                    "zero pivot in column {col} of a {} matrix",
                    shape(self)
                )));
            }
            if p != col {
                for c in 0..width {
                    a.swap(p * width + c, col * width + c);
                }
            }
            let pivot = a[col * width + col].clone();
            for c in 0..width {
                a[col * width + c] = a[col * width + c].div(&pivot, &w)?;
            }
            for r in 0..n {
                if r == col || a[r * width + col].is_zero() {
                    continue;
                }
                let f = a[r * width + col].clone();
                for c in 0..width {
                    let t = f.mul(&a[col * width + c], &w)?;
                    a[r * width + c] = a[r * width + c].sub(&t, &w)?;
                }
            }
        }
        let mut elems = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in n..width {
                elems.push(Real::Float(a[r * width + c].round_to(ctx)?));
            }
        }
        Ok(NumMatrix { rows: n, cols: n, elems })
    }

    fn to_floats(&self, w: &PrecisionContext) -> Result<Vec<BigFloat>> {
        self.elems
            .iter()
            .map(|e| Ok(e.to_float(w)?.round_to(w)?))
            .collect()
    }
}

fn pivot_row(a: &[BigFloat], n: usize, col: usize) -> usize {
    pivot_row_w(a, n, n, col)
}

fn pivot_row_w(a: &[BigFloat], n: usize, width: usize, col: usize) -> usize {
    let mut best = col;
    for r in col + 1..n {
        if a[r * width + col].cmp_abs(&a[best * width + col]) == Ordering::Greater {
            best = r;
        }
    }
    best
}

fn swap_rows(a: &mut [BigFloat], width: usize, r1: usize, r2: usize) {
    for c in 0..width {
        a.swap(r1 * width + c, r2 * width + c);
    }
}

fn eliminate_below(a: &mut [BigFloat], n: usize, width: usize, col: usize, w: &PrecisionContext) -> Result<()> {
    let pivot = a[col * width + col].clone();
    for r in col + 1..n {
        if a[r * width + col].is_zero() {
            continue;
        }
        let f = a[r * width + col].div(&pivot, w)?;
        for c in col..width {
            let t = f.mul(&a[col * width + c], w)?;
            a[r * width + c] = a[r * width + c].sub(&t, w)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bignum::{format_real, parse_decimal};

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn vector(items: &[&str]) -> NumVector {
        let c = ctx();
        NumVector::from_reals(items.iter().map(|s| parse_decimal(s, &c).unwrap()).collect(), &c).unwrap()
    }

    fn row_text(m: &NumMatrix, r: usize) -> Vec<String> {
        m.row(r).iter().map(|e| format_real(e, 8)).collect()
    }

    #[test]
    fn construct_fills_rows_then_zero_pads() {
        let c = ctx();
        let data = vector(&["1", "3.4", "21.6", "19", "-0.1", "10"]);
        let m = NumMatrix::construct(&data, 2, 3, &c).unwrap();
        assert_eq!(row_text(&m, 0), ["1", "3.4", "21.6"]);
        assert_eq!(row_text(&m, 1), ["19", "-0.1", "10"]);
        let m = NumMatrix::construct(&data, 3, 3, &c).unwrap();
        assert_eq!(row_text(&m, 2), ["0", "0", "0"]);
        let z = NumMatrix::construct(&NumVector::default(), 2, 2, &c).unwrap();
        assert!(z.elems().iter().all(Real::is_zero));
        assert!(matches!(NumMatrix::construct(&data, 2, 2, &c), Err(Error::Dimension(_))));
    }

    #[test]
    fn zero_fill_flattens_to_padded_data() {
        let c = ctx();
        let data = NumVector::from_ints(&[4, 12, -1]);
        let m = NumMatrix::construct(&data, 2, 2, &c).unwrap();
        assert_eq!(m.flatten(), NumVector::from_ints(&[4, 12, -1, 0]));
    }

    #[test]
    fn invert_two_by_two_matches_adjugate() {
        let c = ctx();
        let m = NumMatrix::construct(&NumVector::from_ints(&[1, 3, -1, 4]), 2, 2, &c).unwrap();
        let inv = m.invert(&c).unwrap();
        for (got, (num, den)) in inv.elems().iter().zip([(4, 7), (-3, 7), (1, 7), (1, 7)]) {
            assert_eq!(got, &Real::Float(BigFloat::from_fraction(num, den, &c).unwrap()));
        }
    }

    #[test]
    fn identity_properties() {
        let c = ctx();
        let i3 = NumMatrix::identity(3);
        assert_eq!(i3.det(&c).unwrap(), Real::int(1));
        assert_eq!(i3.trace(&c).unwrap(), Real::int(3));
        let m = NumMatrix::construct(&NumVector::from_ints(&[1, 3, -1, 4]), 2, 2, &c).unwrap();
        assert_eq!(m.trace(&c).unwrap(), Real::int(5));
        assert_eq!(m.det(&c).unwrap(), Real::int(7));
        assert_eq!(m.mul(&NumMatrix::identity(2), &c).unwrap(), m);
    }

    #[test]
    fn singular_and_shape_errors() {
        let c = ctx();
        let s = NumMatrix::construct(&NumVector::from_ints(&[1, 2, 2, 4]), 2, 2, &c).unwrap();
        assert!(matches!(s.invert(&c), Err(Error::SingularMatrix(_))));
        assert_eq!(s.det(&c).unwrap(), Real::int(0));
        let r = NumMatrix::construct(&NumVector::from_ints(&[1, 2, 3]), 1, 3, &c).unwrap();
        assert!(matches!(r.invert(&c), Err(Error::Dimension(_))));
        let err = r.mul(&r, &c).unwrap_err();
        assert!(err.to_string().contains("1x3 by 1x3"), "{err}");
    }

    #[test]
    fn float_det_uses_pivots() {
        let c = ctx();
        let m = NumMatrix::construct(&vector(&["0", "2.5", "4", "1"]), 2, 2, &c).unwrap();
        assert_eq!(format_real(&m.det(&c).unwrap(), 8), "-10");
    }

    #[test]
    fn transpose_swaps_shape() {
        let c = ctx();
        let m = NumMatrix::construct(&NumVector::from_ints(&[1, 2, 3, 4, 5, 6]), 2, 3, &c).unwrap();
        let t = m.transpose();
        assert_eq!((t.rows(), t.cols()), (3, 2));
        assert_eq!(t.get(2, 1), &Real::int(6));
    }
}
