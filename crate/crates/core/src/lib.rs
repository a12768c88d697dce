pub mod error;
pub mod fuse;
pub mod limit;
pub mod mu;
pub mod necklace;
pub mod orbit;
pub mod partition;
pub mod polyrat;
pub mod reference;

pub use error::{Error, Result};
