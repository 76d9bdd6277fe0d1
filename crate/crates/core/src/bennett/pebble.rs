//! Reversible pebbling of a straight-line chain of segments.
//!
//! A pebble on segment `i` is a stored checkpoint of the state after block
//! `i`. A pebble may be placed on or removed from segment `i` only while
//! segment `i - 1` holds one (segment 1 is always eligible), which is the
//! reversibility constraint: a checkpoint can only be computed or uncomputed
//! from its predecessor. The goal is a pebble on the last segment.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Largest chain searched exhaustively.
pub const MAX_EXHAUSTIVE_CHAIN: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PebbleMove {
    /// Segment index, 1-based.
    Place(usize),
    Remove(usize),
}

impl PebbleMove {
    pub fn segment(self) -> usize {
        match self {
            PebbleMove::Place(s) | PebbleMove::Remove(s) => s,
        }
    }

    fn reversed(self) -> Self {
        match self {
            PebbleMove::Place(s) => PebbleMove::Remove(s),
            PebbleMove::Remove(s) => PebbleMove::Place(s),
        }
    }
}

impl fmt::Display for PebbleMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PebbleMove::Place(s) => write!(f, "+{s}"),
            PebbleMove::Remove(s) => write!(f, "-{s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PebbleStrategy {
    pub chain_length: usize,
    pub moves: Vec<PebbleMove>,
    pub max_pebbles: usize,
    pub step_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PebbleError {
    #[error("move {index} ({mv}): {reason}")]
    IllegalMove {
        /// 1-based.
        index: usize,
        mv: PebbleMove,
        reason: &'static str,
    },
    #[error("final configuration has no pebble on segment {0}")]
    GoalNotReached(usize),
    #[error("invalid pebble game: {0}")]
    InvalidArguments(String),
}

/// Summary of a legal replay.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Replay {
    pub max_pebbles: usize,
    pub step_count: usize,
    pub final_pebbles: usize,
}

/// Replay `moves` on a chain of `chain_length` segments and check every rule.
pub fn check_legality(chain_length: usize, moves: &[PebbleMove]) -> Result<Replay, PebbleError> {
    if chain_length == 0 {
        return Err(PebbleError::InvalidArguments("empty chain".into()));
    }
    let mut pebbled = vec![false; chain_length + 1];
    let mut count = 0usize;
    let mut max = 0usize;
    for (i, &mv) in moves.iter().enumerate() {
        let illegal = |reason| PebbleError::IllegalMove {
            index: i + 1,
            mv,
            reason,
        };
        let s = mv.segment();
        if s == 0 || s > chain_length {
            return Err(illegal("segment out of range"));
        }
        if s > 1 && !pebbled[s - 1] {
            return Err(illegal("predecessor segment is not pebbled"));
        }
        match mv {
            PebbleMove::Place(_) if pebbled[s] => return Err(illegal("segment already pebbled")),
            PebbleMove::Remove(_) if !pebbled[s] => return Err(illegal("segment has no pebble")),
            PebbleMove::Place(_) => {
                pebbled[s] = true;
                count += 1;
                max = max.max(count);
            }
            PebbleMove::Remove(_) => {
                pebbled[s] = false;
                count -= 1;
            }
        }
    }
    if !pebbled[chain_length] {
        return Err(PebbleError::GoalNotReached(chain_length));
    }
    Ok(Replay {
        max_pebbles: max,
        step_count: moves.len(),
        final_pebbles: count,
    })
}

impl PebbleStrategy {
    pub fn from_moves(chain_length: usize, moves: Vec<PebbleMove>) -> Result<Self, PebbleError> {
        let replay = check_legality(chain_length, &moves)?;
        Ok(Self {
            chain_length,
            moves,
            max_pebbles: replay.max_pebbles,
            step_count: replay.step_count,
        })
    }

    /// Re-check legality and that the recorded counters match a replay.
    pub fn verify(&self) -> Result<(), PebbleError> {
        let replay = check_legality(self.chain_length, &self.moves)?;
        if replay.max_pebbles != self.max_pebbles || replay.step_count != self.step_count {
            return Err(PebbleError::InvalidArguments(
                "recorded counters disagree with the replay".into(),
            ));
        }
        Ok(())
    }
}

/// Minimum-move strategy using at most `max_pebbles` pebbles at once, found by
/// breadth-first search over pebble configurations. `Ok(None)` means the
/// chain cannot be pebbled with that budget.
pub fn pebble_exhaustive(
    chain_length: usize,
    max_pebbles: usize,
) -> Result<Option<PebbleStrategy>, PebbleError> {
    if chain_length == 0 || chain_length > MAX_EXHAUSTIVE_CHAIN {
        return Err(PebbleError::InvalidArguments(format!(
            "chain length must be in 1..={MAX_EXHAUSTIVE_CHAIN}, got {chain_length}"
        )));
    }
    if max_pebbles == 0 {
        return Err(PebbleError::InvalidArguments(
            "need at least one pebble".into(),
        ));
    }
    let n = chain_length;
    let goal_bit = 1u32 << (n - 1);
    let states = 1usize << n;
    // parent[state] = (previous state, segment toggled)
    let mut parent: Vec<Option<(u32, u8)>> = vec![None; states];
    let mut visited = vec![false; states];
    let mut queue = VecDeque::from([0u32]);
    visited[0] = true;
    let mut found = None;
    while let Some(config) = queue.pop_front() {
        if config & goal_bit != 0 {
            found = Some(config);
            break;
        }
        for seg in 0..n {
            if seg > 0 && config & (1 << (seg - 1)) == 0 {
                continue;
            }
            let next = config ^ (1 << seg);
            if next.count_ones() as usize > max_pebbles || visited[next as usize] {
                continue;
            }
            visited[next as usize] = true;
            parent[next as usize] = Some((config, seg as u8));
            queue.push_back(next);
        }
    }
    let Some(mut config) = found else {
        return Ok(None);
    };
    let mut moves = Vec::new();
    while let Some((prev, seg)) = parent[config as usize] {
        let segment = seg as usize + 1;
        moves.push(if config & (1 << seg) != 0 {
            PebbleMove::Place(segment)
        } else {
            PebbleMove::Remove(segment)
        });
        config = prev;
    }
    moves.reverse();
    PebbleStrategy::from_moves(chain_length, moves).map(Some)
}

/// Bennett's recursive checkpointing: split the chain into `branching`
/// roughly equal parts, pebble each part's end in turn, then unpebble all but
/// the last in reverse order. Only segment `chain_length` stays pebbled.
pub fn pebble_bennett_recursive(
    chain_length: usize,
    branching: usize,
) -> Result<PebbleStrategy, PebbleError> {
    if chain_length == 0 {
        return Err(PebbleError::InvalidArguments("empty chain".into()));
    }
    if branching < 2 {
        return Err(PebbleError::InvalidArguments(format!(
            "branching must be at least 2, got {branching}"
        )));
    }
    let mut moves = Vec::new();
    compute(1, chain_length, branching, &mut moves);
    PebbleStrategy::from_moves(chain_length, moves)
}

/// Pebble segment `last` assuming `first - 1` is pebbled (or `first == 1`),
/// leaving no other new pebbles behind.
fn compute(first: usize, last: usize, branching: usize, moves: &mut Vec<PebbleMove>) {
    let len = last - first + 1;
    if len == 1 {
        moves.push(PebbleMove::Place(first));
        return;
    }
    let parts = branching.min(len);
    let mut bounds = Vec::with_capacity(parts);
    let mut start = first;
    for p in 0..parts {
        let size = len / parts + usize::from(p < len % parts);
        bounds.push((start, start + size - 1));
        start += size;
    }
    for &(a, b) in &bounds {
        compute(a, b, branching, moves);
    }
    for &(a, b) in bounds[..parts - 1].iter().rev() {
        let mut sub = Vec::new();
        compute(a, b, branching, &mut sub);
        moves.extend(sub.into_iter().rev().map(PebbleMove::reversed));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_chain() {
        let s = pebble_exhaustive(1, 1).unwrap().unwrap();
        assert_eq!(s.moves, vec![PebbleMove::Place(1)]);
        assert_eq!(pebble_bennett_recursive(1, 3).unwrap().step_count, 1);
    }

    #[test]
    fn three_segments_two_pebbles() {
        let s = pebble_exhaustive(3, 2).unwrap().unwrap();
        // +1 +2 -1 +3
        assert_eq!(s.step_count, 4);
        assert_eq!(s.max_pebbles, 2);
        s.verify().unwrap();
    }

    #[test]
    fn one_pebble_cannot_reach_four() {
        assert_eq!(pebble_exhaustive(4, 1).unwrap(), None);
        assert_eq!(pebble_exhaustive(2, 1).unwrap(), None);
    }

    #[test]
    fn bennett_n4_k2() {
        let s = pebble_bennett_recursive(4, 2).unwrap();
        assert!(s.max_pebbles <= 3);
        s.verify().unwrap();
        assert_eq!(check_legality(4, &s.moves).unwrap().final_pebbles, 1);
    }

    #[test]
    fn bennett_n9_k3_regression() {
        let s = pebble_bennett_recursive(9, 3).unwrap();
        s.verify().unwrap();
        assert_eq!((s.step_count, s.max_pebbles), (25, 5));
    }

    #[test]
    fn legality_checker_rejects() {
        use PebbleMove::*;
        assert!(matches!(
            check_legality(3, &[Place(2)]),
            Err(PebbleError::IllegalMove { index: 1, .. })
        ));
        assert!(matches!(
            check_legality(2, &[Place(1), Place(1)]),
            Err(PebbleError::IllegalMove { index: 2, .. })
        ));
        assert!(matches!(
            check_legality(2, &[Remove(1)]),
            Err(PebbleError::IllegalMove { .. })
        ));
        assert!(matches!(
            check_legality(2, &[Place(1)]),
            Err(PebbleError::GoalNotReached(2))
        ));
        assert!(matches!(
            check_legality(2, &[Place(3)]),
            Err(PebbleError::IllegalMove { .. })
        ));
    }

    #[test]
    fn argument_errors() {
        assert!(pebble_exhaustive(0, 1).is_err());
        assert!(pebble_exhaustive(13, 4).is_err());
        assert!(pebble_exhaustive(3, 0).is_err());
        assert!(pebble_bennett_recursive(5, 1).is_err());
    }
}
