/// Outcome of a certificate checker: every condition holds, or the first
/// condition that fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<F> {
    Holds,
    Fails(F),
}

impl<F> Verdict<F> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn failure(&self) -> Option<&F> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(f) => Some(f),
        }
    }

    pub fn map<G>(self, f: impl FnOnce(F) -> G) -> Verdict<G> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Fails(x) => Verdict::Fails(f(x)),
        }
    }
}

impl<F> From<Result<(), F>> for Verdict<F> {
    fn from(r: Result<(), F>) -> Self {
        match r {
            Ok(()) => Verdict::Holds,
            Err(f) => Verdict::Fails(f),
        }
    }
}
