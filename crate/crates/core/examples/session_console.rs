//! A session driven statement by statement: output items, objects, help
//! and completion.

use arbcalc::runtime::Session;

fn main() {
    let mut session = Session::new();
    let statements = [
        "2^( 3 + 1 ) / 4",
        "$myvar = 2^( 3 + 1 ) / 4",
        "$MyVar * 3",
        "$z = {2, -1} * {-1, 3}",
        "$z",
        "$nope + 1",
        "objects",
        "help sqrt",
    ];
    for s in statements {
        println!(">> {s}");
        for item in session.run(s) {
            println!("[{}] {}", item.tag.name(), item.text);
        }
    }
    for fragment in ["seq", "SQ", "$m", "t"] {
        println!("complete {fragment:?} -> {:?}", session.complete_prefix(fragment));
    }
}
