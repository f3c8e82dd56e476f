/// Size limits for the exponential and enumerative routines.
///
/// Every routine that would blow up past its limit returns
/// [`Error::CapExceeded`](crate::Error::CapExceeded) instead of truncating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_tree_order: usize,
    pub max_graph_order: usize,
    pub max_bruteforce_gamma_r: usize,
    pub max_function_enumeration: usize,
    pub max_bruteforce_gamma: usize,
    pub max_partition_order: usize,
}

impl Caps {
    pub const DEFAULT: Caps = Caps {
        max_tree_order: 16,
        max_graph_order: 7,
        max_bruteforce_gamma_r: 14,
        max_function_enumeration: 12,
        max_bruteforce_gamma: 20,
        max_partition_order: 10_000,
    };
}

impl Default for Caps {
    fn default() -> Self {
        Caps::DEFAULT
    }
}

pub(crate) fn check_cap(what: &'static str, order: usize, cap: usize) -> crate::Result<()> {
    if order > cap {
        Err(crate::Error::CapExceeded { what, order, cap })
    } else {
        Ok(())
    }
}
