use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use super::gates::{compose, Mat2, SqGate};
use crate::error::{Error, Result};
use crate::gate::{Gate, Qubit};
use crate::unitary::Unitary;

/// Longest word length the enumerator accepts.
pub const MAX_NET_LEN: usize = 16;

/// Default search bound for `min_sequence`.
pub const DEFAULT_SEARCH_LEN: usize = 14;

/// A word over the single-qubit gate set with its achieved distance to a target.
#[derive(Clone, Debug, PartialEq)]
pub struct GateSequence {
    pub gates: Vec<SqGate>,
    pub achieved_distance: f64,
    pub target: Unitary,
    /// False when no word within the search bound met the requested accuracy.
    pub satisfied: bool,
}

impl GateSequence {
    pub fn new(gates: Vec<SqGate>, target: &Unitary, epsilon: f64) -> GateSequence {
        let m = Mat2::from_unitary(target).expect("2x2 target");
        let achieved_distance = compose(&gates).dist(m);
        GateSequence { gates, achieved_distance, target: target.clone(), satisfied: achieved_distance <= epsilon }
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn t_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_t()).count()
    }

    /// Length excluding X, Y and Z.
    pub fn non_pauli_len(&self) -> usize {
        self.gates.iter().filter(|g| !g.is_pauli()).count()
    }

    pub fn unitary(&self) -> Unitary {
        compose(&self.gates).to_unitary()
    }

    pub fn to_gates(&self, q: Qubit) -> Vec<Gate> {
        self.gates.iter().map(|g| g.gate(q)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct NetEntry {
    pub word: Vec<SqGate>,
    pub unitary: Mat2,
}

/// Every distinct unitary (up to phase) reachable with at most `max_len` gates,
/// each stored once with its shortest, then lexicographically smallest, word.
/// Entries are ordered by length and then lexicographically.
#[derive(Clone, Debug)]
pub struct SequenceDb {
    max_len: usize,
    entries: Vec<NetEntry>,
    level_starts: Vec<usize>,
}

impl SequenceDb {
    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[NetEntry] {
        &self.entries
    }

    /// Entries of word length at most `len`.
    pub fn up_to(&self, len: usize) -> &[NetEntry] {
        let end = self.level_starts.get(len + 1).copied().unwrap_or(self.entries.len());
        &self.entries[..end]
    }

    pub fn contains_word(&self, word: &[SqGate]) -> bool {
        self.up_to(word.len()).iter().any(|e| e.word == word)
    }

    /// Shared net, built once per length bound.
    pub fn shared(max_len: usize) -> Result<Arc<SequenceDb>> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<SequenceDb>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(db) = cache.lock().expect("net cache").get(&max_len) {
            return Ok(db.clone());
        }
        let db = Arc::new(build_net(max_len)?);
        cache.lock().expect("net cache").insert(max_len, db.clone());
        Ok(db)
    }
}

/// Breadth-first enumeration of the gate-set words up to `max_len`.
pub fn build_net(max_len: usize) -> Result<SequenceDb> {
    if max_len > MAX_NET_LEN {
        return Err(Error::LengthBound(max_len));
    }
    let root = NetEntry { word: Vec::new(), unitary: Mat2::identity() };
    let mut seen: HashSet<[i64; 9]> = HashSet::from([root.unitary.key()]);
    let mut entries = vec![root];
    let mut level_starts = vec![0];
    let mut frontier = 0..1;
    for _ in 1..=max_len {
        let start = entries.len();
        level_starts.push(start);
        for parent in frontier.clone() {
            for g in SqGate::ALL {
                let u = g.mat() * entries[parent].unitary;
                if seen.insert(u.key()) {
                    let mut word = entries[parent].word.clone();
                    word.push(g);
                    entries.push(NetEntry { word, unitary: u });
                }
            }
        }
        frontier = start..entries.len();
    }
    Ok(SequenceDb { max_len, entries, level_starts })
}

/// Shortest word within `max_len` whose distance to `target` is at most `epsilon`.
///
/// If none exists the closest word found is returned with `satisfied == false`.
pub fn min_sequence(target: &Unitary, epsilon: f64, max_len: usize) -> Result<GateSequence> {
    let db = SequenceDb::shared(max_len)?;
    min_sequence_in(&db, target, epsilon, max_len)
}

pub fn min_sequence_in(db: &SequenceDb, target: &Unitary, epsilon: f64, max_len: usize) -> Result<GateSequence> {
    if epsilon <= 0.0 || !epsilon.is_finite() {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {epsilon}")));
    }
    let t = Mat2::from_unitary(target).ok_or(Error::DimensionMismatch(target.dim(), 2))?;
    let mut best: Option<(f64, &NetEntry)> = None;
    for e in db.up_to(max_len) {
        let d = e.unitary.dist(t);
        if d <= epsilon {
            return Ok(GateSequence::new(e.word.clone(), target, epsilon));
        }
        if best.is_none_or(|(b, _)| d < b) {
            best = Some((d, e));
        }
    }
    let (_, e) = best.ok_or(Error::Empty("sequence net"))?;
    Ok(GateSequence::new(e.word.clone(), target, epsilon))
}

/// Nearest net element; ties go to the earlier (shorter, then lexicographically smaller) word.
pub fn nearest(db: &SequenceDb, target: Mat2) -> &NetEntry {
    let mut best = &db.entries[0];
    let mut best_d = best.unitary.dist(target);
    for e in &db.entries[1..] {
        let d = e.unitary.dist(target);
        if d < best_d {
            best = e;
            best_d = d;
        }
    }
    best
}
