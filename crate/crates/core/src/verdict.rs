use alloc::string::String;
use num_rational::BigRational;

/// Outcome of a horizon-bounded analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Holds,
    Inconclusive,
    Fails,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Inconclusive => "inconclusive",
        }
    }

    /// Combine two outcomes keeping the worst one (`Fails` > `Inconclusive` > `Holds`).
    pub fn worst(self, other: Status) -> Status {
        self.max(other)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Every segment starting after `index` stays within tolerance.
    Settle {
        index: usize,
    },
    /// A pair of indices and the distance observed between them.
    Pair {
        l: usize,
        m: usize,
        distance: BigRational,
    },
    Index(usize),
    /// Flat coordinate index inside a product.
    Coordinate(usize),
    /// Row/column coordinate inside a grid-indexed product.
    Cell {
        row: usize,
        col: usize,
    },
    /// Partial sums leave the ball of radius `bound` at `coordinate`.
    Escape {
        bound: u64,
        coordinate: usize,
    },
    Trial {
        trial: usize,
        detail: String,
    },
}

/// Three-valued verdict with the horizon and tolerance it was reached at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Witness>,
    pub horizon: usize,
    pub tolerance: BigRational,
}

impl Verdict {
    pub fn holds(witness: Option<Witness>, horizon: usize, tolerance: BigRational) -> Self {
        Verdict { status: Status::Holds, witness, horizon, tolerance }
    }

    /// A failing verdict always names its counterexample.
    pub fn fails(witness: Witness, horizon: usize, tolerance: BigRational) -> Self {
        Verdict { status: Status::Fails, witness: Some(witness), horizon, tolerance }
    }

    pub fn inconclusive(witness: Option<Witness>, horizon: usize, tolerance: BigRational) -> Self {
        Verdict { status: Status::Inconclusive, witness, horizon, tolerance }
    }

    pub fn is_holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.status == Status::Fails
    }
}
