use thiserror::Error;

/// Everything that can go wrong while building or querying a group.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("{0}")]
    Input(String),

    #[error("table is not a group: {0}")]
    Axiom(String),

    #[error("order {order} exceeds the configured cap of {cap}")]
    OrderCap { order: usize, cap: usize },

    #[error("{what} needs subgroup enumeration of a group of order {order}, above the subgroup cap {cap}")]
    SubgroupCap {
        what: &'static str,
        order: usize,
        cap: usize,
    },

    #[error("{what} exceeded the search limit of {limit}")]
    SearchLimit { what: &'static str, limit: usize },

    #[error("catalog of order {order} from {source_name} is not declared complete; pass the advisory flag to rank it anyway")]
    IncompleteCatalog { order: u64, source_name: String },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error on {path}: {msg}")]
    Io { path: String, msg: String },
}

impl GroupError {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        GroupError::Input(msg.into())
    }

    /// True for errors that signal a configured cap rather than bad input.
    pub fn is_capability(&self) -> bool {
        matches!(
            self,
            GroupError::OrderCap { .. }
                | GroupError::SubgroupCap { .. }
                | GroupError::SearchLimit { .. }
                | GroupError::IncompleteCatalog { .. }
        )
    }
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;
