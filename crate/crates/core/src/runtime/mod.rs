//! Statement evaluation and session state.

mod commands;
mod eval;
mod functions;
mod session;
mod value;

pub use commands::{help_index, help_topic, object_listing, CommandSpec, MAX_WORDS};
pub use functions::FunctionSpec;
pub use session::{ItemTag, ObjectKind, OutputItem, Session};
pub use value::{preview, render_complex, render_matrix, render_value, render_vector, Value};

/// Built-in functions, sorted by name.
pub fn functions() -> &'static [FunctionSpec] {
    functions::registry()
}

/// Session commands, sorted by name.
pub fn commands() -> &'static [CommandSpec] {
    commands::registry()
}

pub fn is_function(name: &str) -> bool {
    functions::lookup(name).is_some()
}

pub fn is_command(name: &str) -> bool {
    commands::lookup(name).is_some()
}
