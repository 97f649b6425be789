//! Text documents, the bundled gallery, and Graphviz export.

pub mod dot;
pub mod gallery;
pub mod text;

pub use dot::{export_dot, DotOptions};
pub use gallery::{gallery, negative_gallery};
pub use text::{parse, print, Document, FunctorDoc};
