//! Starts the JSON service on a local port and talks to it as a client.

use std::io::{BufRead, BufReader, Write};
use std::net::{TcpListener, TcpStream};

use arbcalc::bignum::PrecisionContext;
use arbcalc::service::serve_listener;

fn main() -> std::io::Result<()> {
    let listener = TcpListener::bind("127.0.0.1:0")?;
    let addr = listener.local_addr()?;
    std::thread::spawn(move || serve_listener(listener, PrecisionContext::default()));

    let stream = TcpStream::connect(addr)?;
    let mut writer = stream.try_clone()?;
    let mut reader = BufReader::new(stream);
    let requests = [
        r#"{"id":"1","kind":"eval","source":"$x = sequence(-1, 1, 0.1)\n$y = cos($x) * sin($x)\nplot($x, $y, xtitle=\"x [rad]\")"}"#,
        r#"{"id":"2","kind":"complete","fragment":"seq"}"#,
        r#"{"id":"3","kind":"objects"}"#,
        r#"{"id":"4","kind":"eval","source":"ztest([9, 3, -1, -2, 4, 5], 2, 3)"}"#,
        r#"{"id":"5","kind":"get_chart","name":"nosuch"}"#,
        r#"{"id":"6","kind":"help","name":"plot"}"#,
    ];
    for req in requests {
        writer.write_all(req.as_bytes())?;
        writer.write_all(b"\n")?;
        let mut line = String::new();
        reader.read_line(&mut line)?;
        println!("-> {req}\n<- {}", line.trim_end());
    }
    Ok(())
}
