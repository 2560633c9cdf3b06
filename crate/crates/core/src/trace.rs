use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Accept,
    Reject,
}

impl Verdict {
    pub fn is_accept(self) -> bool {
        self == Verdict::Accept
    }

    pub fn from_reject(reject: bool) -> Self {
        if reject {
            Verdict::Reject
        } else {
            Verdict::Accept
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accept => f.write_str("accept"),
            Verdict::Reject => f.write_str("reject"),
        }
    }
}

/// Outcome of one verifier run: the verdict, both query counters, the proof
/// bits the verifier parsed, and the seed that replays the run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerdictTrace {
    pub verdict: Verdict,
    pub classical_queries: u64,
    pub modeled_quantum_queries: u64,
    pub proof_bits_consumed: u64,
    pub seed: u64,
}

/// Alias used by the protocol layer.
pub type ProtocolResult = VerdictTrace;

impl VerdictTrace {
    pub fn reject_without_queries(proof_bits_consumed: u64, seed: u64) -> Self {
        Self {
            verdict: Verdict::Reject,
            classical_queries: 0,
            modeled_quantum_queries: 0,
            proof_bits_consumed,
            seed,
        }
    }
}
