/// Resource guards shared by constructors and searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest poset any constructor may build.
    pub max_points: usize,
    /// Largest number of valuations a validity check may enumerate.
    pub max_valuations: u128,
    /// Backtracking nodes a morphism or isomorphism search may expand.
    pub max_search_nodes: u64,
}

pub const DEFAULT_MAX_POINTS: usize = 20_000;
pub const DEFAULT_MAX_VALUATIONS: u128 = 100_000_000;
pub const DEFAULT_MAX_SEARCH_NODES: u64 = 100_000_000;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_points: DEFAULT_MAX_POINTS,
            max_valuations: DEFAULT_MAX_VALUATIONS,
            max_search_nodes: DEFAULT_MAX_SEARCH_NODES,
        }
    }
}

impl Limits {
    pub fn with_points(mut self, n: usize) -> Self {
        self.max_points = n;
        self
    }

    pub fn with_valuations(mut self, n: u128) -> Self {
        self.max_valuations = n;
        self
    }

    pub fn with_search_nodes(mut self, n: u64) -> Self {
        self.max_search_nodes = n;
        self
    }

    pub(crate) fn check_points(&self, requested: u128) -> crate::Result<()> {
        if requested > self.max_points as u128 {
            Err(crate::Error::SizeGuard {
                requested,
                budget: self.max_points,
            })
        } else {
            Ok(())
        }
    }
}
