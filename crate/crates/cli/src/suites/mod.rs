//! Suite implementations, one module per area.

pub mod cases;
pub mod factor;
pub mod gelfand;
pub mod groups;
pub mod ortho;
pub mod partitions;
pub mod properties;
pub mod relations;
