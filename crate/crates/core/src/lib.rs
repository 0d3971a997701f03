//! Exact enumeration of pattern-avoiding ordered set partitions and words.

pub mod arith;
pub mod bridge;
pub mod error;
pub mod formulas;
pub mod method;
pub mod oracle;
pub mod patterns;
pub mod poly;
pub mod series;
pub mod table;
pub mod verify;
