//! Newline-delimited JSON protocol over TCP, one session per connection.
//!
//! Request: `{"id": "...", "kind": "...", "source"?, "fragment"?, "name"?}`.
//! Response: `{"id": "...", "ok": bool, "items"?, "names"?, "error"?}`.
//! Evaluation failures are ordinary `error` items; `ok` is false only for
//! protocol errors.

use std::io::{self, BufRead, BufReader, Write};
use std::net::{TcpListener, TcpStream, ToSocketAddrs};
use std::thread;

use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

use crate::bignum::PrecisionContext;
use crate::runtime::{help_index, help_topic, object_listing, ObjectKind, OutputItem, Session};
use crate::viz::{render_svg, DEFAULT_HEIGHT, DEFAULT_WIDTH};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Request {
    pub id: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fragment: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl Request {
    pub fn new(id: impl Into<String>, kind: impl Into<String>) -> Request {
        Request {
            id: id.into(),
            kind: kind.into(),
            ..Request::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Item {
    pub tag: String,
    pub text: String,
}

impl From<&OutputItem> for Item {
    fn from(i: &OutputItem) -> Item {
        Item {
            tag: i.tag.name().to_string(),
            text: i.text.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Response {
    pub id: String,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub items: Option<Vec<Item>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Response {
    fn ok(id: String) -> Response {
        Response {
            id,
            ok: true,
            items: None,
            names: None,
            error: None,
        }
    }

    fn fail(id: String, error: impl Into<String>) -> Response {
        Response {
            id,
            ok: false,
            items: None,
            names: None,
            error: Some(error.into()),
        }
    }

    fn text(id: String, text: String) -> Response {
        Response {
            items: Some(vec![Item {
                tag: "text".into(),
                text,
            }]),
            ..Response::ok(id)
        }
    }
}

/// Protocol state for one connection.
pub struct Connection {
    session: Session,
    ctx: PrecisionContext,
}

impl Connection {
    pub fn new(ctx: PrecisionContext) -> Connection {
        Connection {
            session: Session::with_context(ctx.clone()),
            ctx,
        }
    }

    pub fn session(&self) -> &Session {
        &self.session
    }

    /// Answers one request line. Every line gets exactly one response.
    pub fn handle_line(&mut self, line: &str) -> Response {
        let json: Json = match serde_json::from_str(line) {
            Ok(j) => j,
            Err(e) => return Response::fail(String::new(), format!("malformed message: {e}")),
        };
        let id = match json.get("id") {
            Some(Json::String(s)) => s.clone(),
            Some(other) => other.to_string(),
            None => String::new(),
        };
        match serde_json::from_value::<Request>(json) {
            Ok(req) => self.handle(req),
            Err(e) => Response::fail(id, format!("malformed message: {e}")),
        }
    }

    pub fn handle(&mut self, req: Request) -> Response {
        let id = req.id;
        let missing = |field: &str| format!("{} request needs a '{field}' field", req.kind);
        match req.kind.as_str() {
            "eval" => match req.source {
                Some(src) => Response {
                    items: Some(self.session.run(&src).iter().map(Item::from).collect()),
                    ..Response::ok(id)
                },
                None => Response::fail(id, missing("source")),
            },
            "complete" => match req.fragment {
                Some(f) => Response {
                    names: Some(self.session.complete_prefix(&f)),
                    ..Response::ok(id)
                },
                None => Response::fail(id, missing("fragment")),
            },
            "objects" => self.objects(id),
            "get_chart" => match req.name.as_deref().and_then(|n| self.session.chart(n)) {
                Some(c) => Response::text(id, render_svg(c, DEFAULT_WIDTH, DEFAULT_HEIGHT)),
                None if req.name.is_none() => Response::fail(id, missing("name")),
                None => Response::fail(id, "unknown chart"),
            },
            "get_report" => match req.name.as_deref().and_then(|n| self.session.report(n)) {
                Some(r) => Response {
                    names: Some(vec![r.kind.name().to_string()]),
                    ..Response::text(id, r.body.clone())
                },
                None if req.name.is_none() => Response::fail(id, missing("name")),
                None => Response::fail(id, "unknown report"),
            },
            "help" => {
                let text = match req.name.as_deref() {
                    None | Some("") => help_index(),
                    Some(t) => help_topic(t).unwrap_or_else(|| format!("no help for {t}")),
                };
                Response::text(id, text)
            }
            "reset" => {
                self.session = Session::with_context(self.ctx.clone());
                Response::ok(id)
            }
            other => Response::fail(id, format!("unknown kind '{other}'")),
        }
    }

    /// One item per object group; `names[i]` labels `items[i]`.
    fn objects(&self, id: String) -> Response {
        let kinds = [ObjectKind::Dataset, ObjectKind::Variable, ObjectKind::Chart, ObjectKind::Report];
        let mut items = Vec::new();
        for kind in kinds {
            items.push(Item {
                tag: "text".into(),
                text: object_listing(&self.session, kind).join("\n"),
            });
        }
        Response {
            items: Some(items),
            names: Some(kinds.iter().map(|k| k.name().to_string()).collect()),
            ..Response::ok(id)
        }
    }
}

/// Serves one connection until the peer closes it.
pub fn serve_connection(stream: TcpStream, ctx: PrecisionContext) -> io::Result<()> {
    let mut writer = stream.try_clone()?;
    let reader = BufReader::new(stream);
    let mut conn = Connection::new(ctx);
    for line in reader.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let resp = conn.handle_line(&line);
        let mut text = serde_json::to_string(&resp).map_err(io::Error::other)?;
        text.push('\n');
        writer.write_all(text.as_bytes())?;
        writer.flush()?;
    }
    Ok(())
}

/// Accepts connections forever, one thread each.
pub fn serve_listener(listener: TcpListener, ctx: PrecisionContext) -> io::Result<()> {
    for stream in listener.incoming() {
        let stream = stream?;
        let ctx = ctx.clone();
        thread::spawn(move || {
            let _ = serve_connection(stream, ctx);
        });
    }
    Ok(())
}

pub fn serve(addr: impl ToSocketAddrs, ctx: PrecisionContext) -> io::Result<()> {
    let listener = TcpListener::bind(addr)?;
    if let Ok(a) = listener.local_addr() {
        eprintln!("arbcalc: serving on {a}");
    }
    serve_listener(listener, ctx)
}
