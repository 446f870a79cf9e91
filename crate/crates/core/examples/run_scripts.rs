//! Runs every script in `examples/scripts` through a fresh session, the
//! same way `arbcalc --script` does, without writing any files.

use std::path::Path;

use arbcalc::cli::run_batch;
use arbcalc::runtime::Session;

fn main() -> std::io::Result<()> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    std::env::set_current_dir(root)?;
    let mut scripts: Vec<_> = std::fs::read_dir(root.join("examples/scripts"))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "arb"))
        .collect();
    scripts.sort();
    for path in scripts {
        println!("== {}", path.file_name().unwrap().to_string_lossy());
        let source = std::fs::read_to_string(&path)?;
        let mut session = Session::new();
        let status = run_batch(&mut session, &source, None, &mut std::io::stdout(), &mut std::io::stderr());
        println!("(exit status {status})");
    }
    Ok(())
}
