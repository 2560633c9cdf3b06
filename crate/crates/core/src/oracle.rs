//! Oracle access with exact query accounting.
//!
//! A [`CountingOracle`] wraps an immutable payload and two counters. The
//! classical counter moves only through [`CountingOracle::read`]; the
//! modeled-quantum counter moves only through
//! [`CountingOracle::charge_modeled`], which the amplification and
//! collision-finding models call.
//!
//! [`CountingOracle::payload`] gives the simulator uncounted access to the
//! whole input. It exists because the quantum models need exact acceptance
//! probabilities (an amplitude depends on the entire input); verifier logic
//! never reads through it.

use std::cell::Cell;
use std::fmt::Debug;
use std::sync::Arc;

use crate::codes::f3::F3;
use crate::error::{Error, Result};

/// An input object that can be probed coordinate by coordinate.
pub trait Payload {
    type Index: Copy + Debug;
    type Symbol: Copy;

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `None` when the index is outside the payload.
    fn lookup(&self, index: Self::Index) -> Option<Self::Symbol>;

    /// Bit-queries charged for one read.
    fn symbol_cost(&self) -> u64;
}

/// `x ∈ {0,1}^n`, one bit per byte.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitString(pub Vec<u8>);

impl Payload for BitString {
    type Index = usize;
    type Symbol = u8;

    fn len(&self) -> usize {
        self.0.len()
    }

    fn lookup(&self, index: usize) -> Option<u8> {
        self.0.get(index).copied()
    }

    fn symbol_cost(&self) -> u64 {
        1
    }
}

/// `w ∈ F_3^n`. Each symbol costs two bit-queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldString(pub Vec<F3>);

impl Payload for FieldString {
    type Index = usize;
    type Symbol = F3;

    fn len(&self) -> usize {
        self.0.len()
    }

    fn lookup(&self, index: usize) -> Option<F3> {
        self.0.get(index).copied()
    }

    fn symbol_cost(&self) -> u64 {
        2
    }
}

/// `f: [n] → [n]`. Each value costs `⌈log₂ n⌉` bit-queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionTable(pub Vec<usize>);

impl Payload for FunctionTable {
    type Index = usize;
    type Symbol = usize;

    fn len(&self) -> usize {
        self.0.len()
    }

    fn lookup(&self, index: usize) -> Option<usize> {
        self.0.get(index).copied()
    }

    fn symbol_cost(&self) -> u64 {
        ceil_log2(self.0.len() as u64).max(1) as u64
    }
}

/// Bounded-degree adjacency list: `(v, i) ↦ i-th neighbour of v`, or `None`
/// (⊥) when `v` has at most `i` neighbours. One query per probe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyList {
    pub degree_bound: usize,
    pub neighbours: Vec<Vec<usize>>,
}

impl Payload for AdjacencyList {
    type Index = (usize, usize);
    type Symbol = Option<usize>;

    fn len(&self) -> usize {
        self.neighbours.len() * self.degree_bound
    }

    fn lookup(&self, (v, i): (usize, usize)) -> Option<Option<usize>> {
        if i >= self.degree_bound {
            return None;
        }
        self.neighbours.get(v).map(|ns| ns.get(i).copied())
    }

    fn symbol_cost(&self) -> u64 {
        1
    }
}

pub(crate) fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// Payload plus counters. Counters are confined to one trial; use
/// [`CountingOracle::fresh`] to hand each trial its own copy.
#[derive(Debug)]
pub struct CountingOracle<P: Payload> {
    payload: Arc<P>,
    queries: Cell<u64>,
    modeled: Cell<u64>,
}

impl<P: Payload> CountingOracle<P> {
    pub fn new(payload: P) -> Self {
        Self::from_shared(Arc::new(payload))
    }

    pub fn from_shared(payload: Arc<P>) -> Self {
        Self {
            payload,
            queries: Cell::new(0),
            modeled: Cell::new(0),
        }
    }

    /// Same payload, zeroed counters.
    pub fn fresh(&self) -> Self {
        Self::from_shared(Arc::clone(&self.payload))
    }

    /// Counted read. Panics on an out-of-range index: that is a bug in the
    /// caller, never a protocol outcome.
    pub fn read(&self, index: P::Index) -> P::Symbol {
        match self.try_read(index) {
            Ok(s) => s,
            Err(e) => panic!("{e}"),
        }
    }

    pub fn try_read(&self, index: P::Index) -> Result<P::Symbol> {
        let symbol = self
            .payload
            .lookup(index)
            .ok_or_else(|| Error::OutOfRange {
                index: format!("{index:?}"),
                len: self.payload.len(),
            })?;
        self.queries
            .set(self.queries.get() + self.payload.symbol_cost());
        Ok(symbol)
    }

    /// Uncounted access for ground-truth simulation.
    pub fn payload(&self) -> &P {
        &self.payload
    }

    pub fn shared_payload(&self) -> Arc<P> {
        Arc::clone(&self.payload)
    }

    pub fn queries(&self) -> u64 {
        self.queries.get()
    }

    pub fn modeled_queries(&self) -> u64 {
        self.modeled.get()
    }

    pub fn charge_modeled(&self, amount: u64) {
        self.modeled.set(self.modeled.get() + amount);
    }

    pub fn symbol_cost(&self) -> u64 {
        self.payload.symbol_cost()
    }
}
