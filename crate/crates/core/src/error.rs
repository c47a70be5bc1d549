use crate::constants::ConstantEnclosure;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("{value} is outside the supported range (limit {limit})")]
    OutOfRange { value: u64, limit: u64 },

    #[error("{0} is not square-free")]
    NotSquareFree(u64),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("budget exceeded for {what}: needs {needed}, budget is {budget}")]
    Budget {
        what: &'static str,
        needed: String,
        budget: String,
    },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// The adaptive Euler product hit its cutoff ceiling before reaching the
    /// requested width. The best enclosure obtained is attached.
    #[error(
        "target width {target:e} not reached below cutoff {}: achieved width {achieved:e}",
        .enclosure.cutoff
    )]
    WidthUnreachable {
        target: f64,
        achieved: f64,
        enclosure: Box<ConstantEnclosure>,
    },
}

impl Error {
    /// True for failures caused by a resource ceiling rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::Budget { .. }
                | Error::Overflow(_)
                | Error::WidthUnreachable { .. }
                | Error::OutOfRange { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
