use std::fmt;

/// Search limits shared by the bounded procedures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximal length of candidate conjugators.
    pub radius: usize,
    /// Maximal absolute exponent scanned in orbit searches.
    pub kmax: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { radius: 6, kmax: 12 }
    }
}

impl Budget {
    pub fn new(radius: usize, kmax: u32) -> Self {
        Budget { radius, kmax }
    }
}

/// What a bounded search ran out of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exhausted {
    pub reason: String,
}

impl Exhausted {
    pub fn new(reason: impl Into<String>) -> Self {
        Exhausted {
            reason: reason.into(),
        }
    }
}

impl fmt::Display for Exhausted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.reason)
    }
}

/// Outcome of a procedure that may be cut short by its budget.
///
/// `Yes` always carries a certificate that was checked exactly; `No` only
/// comes from exact arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision<T> {
    Yes(T),
    No,
    Unknown(Exhausted),
}

impl<T> Decision<T> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Decision::No)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Decision::Unknown(_))
    }

    pub fn yes(self) -> Option<T> {
        match self {
            Decision::Yes(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_ref(&self) -> Decision<&T> {
        match self {
            Decision::Yes(t) => Decision::Yes(t),
            Decision::No => Decision::No,
            Decision::Unknown(e) => Decision::Unknown(e.clone()),
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Decision<U> {
        match self {
            Decision::Yes(t) => Decision::Yes(f(t)),
            Decision::No => Decision::No,
            Decision::Unknown(e) => Decision::Unknown(e),
        }
    }
}
