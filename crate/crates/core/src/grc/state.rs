use std::fmt;

use super::GrcError;

/// Largest width for which explicit tables and distributions are built.
pub const MAX_WIDTH: usize = 24;

/// The `2^width` digital states of `width` binary variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StateSpace {
    width: usize,
}

impl StateSpace {
    pub fn new(width: usize) -> Result<Self, GrcError> {
        if width == 0 || width > MAX_WIDTH {
            return Err(GrcError::WidthOutOfRange(width));
        }
        Ok(Self { width })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn size(&self) -> usize {
        1 << self.width
    }

    /// All states in canonical (lexicographic) order.
    pub fn states(&self) -> impl Iterator<Item = BitState> + '_ {
        let width = self.width;
        (0..self.size() as u64).map(move |value| BitState { value, width })
    }

    pub fn state(&self, index: usize) -> BitState {
        debug_assert!(index < self.size());
        BitState {
            value: index as u64,
            width: self.width,
        }
    }

    pub fn contains(&self, state: &BitState) -> bool {
        state.width == self.width
    }
}

/// A fixed-width tuple of bits. Variable 0 is the most significant, so the
/// numeric order of `value` is the lexicographic order of the tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitState {
    width: usize,
    value: u64,
}

impl BitState {
    /// Up to 64 variables; only widths up to [`MAX_WIDTH`] are enumerable.
    pub fn new(width: usize, value: u64) -> Self {
        assert!(width <= 64, "bit state wider than 64 variables");
        let mask = if width == 64 {
            u64::MAX
        } else {
            (1u64 << width) - 1
        };
        Self {
            width,
            value: value & mask,
        }
    }

    pub fn zeros(width: usize) -> Self {
        Self::new(width, 0)
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let value = bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
        Self::new(bits.len(), value)
    }

    /// Parse a string of `0`/`1` characters, most-significant variable first.
    pub fn parse(text: &str) -> Option<Self> {
        if text.is_empty() || text.len() > 64 {
            return None;
        }
        let mut value = 0u64;
        for c in text.chars() {
            value = (value << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    _ => return None,
                };
        }
        Some(Self::new(text.len(), value))
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn index(&self) -> usize {
        self.value as usize
    }

    fn shift(&self, var: usize) -> usize {
        assert!(
            var < self.width,
            "variable {var} out of range for width {}",
            self.width
        );
        self.width - 1 - var
    }

    pub fn get(&self, var: usize) -> bool {
        (self.value >> self.shift(var)) & 1 == 1
    }

    pub fn set(&mut self, var: usize, bit: bool) {
        let s = self.shift(var);
        self.value = (self.value & !(1 << s)) | ((bit as u64) << s);
    }

    pub fn with(mut self, var: usize, bit: bool) -> Self {
        self.set(var, bit);
        self
    }

    pub fn bits(&self) -> Vec<bool> {
        (0..self.width).map(|i| self.get(i)).collect()
    }

    /// Bits `start..start + len` as a new state.
    pub fn slice(&self, start: usize, len: usize) -> BitState {
        BitState::from_bits(&self.bits()[start..start + len])
    }
}

impl fmt::Display for BitState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.width {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn width_bounds() {
        assert!(StateSpace::new(0).is_err());
        assert!(StateSpace::new(25).is_err());
        assert_eq!(StateSpace::new(24).unwrap().size(), 1 << 24);
        assert_eq!(StateSpace::new(3).unwrap().states().count(), 8);
    }

    #[test]
    fn msb_first_layout() {
        let s = BitState::parse("100").unwrap();
        assert!(s.get(0));
        assert!(!s.get(2));
        assert_eq!(s.value(), 4);
        assert_eq!(s.to_string(), "100");
        assert_eq!(BitState::from_bits(&[true, false, true]).value(), 5);
        assert!(BitState::parse("10x").is_none());
        assert!(BitState::parse("").is_none());
    }

    #[test]
    fn order_is_lexicographic() {
        let space = StateSpace::new(3).unwrap();
        let strings: Vec<String> = space.states().map(|s| s.to_string()).collect();
        let mut sorted = strings.clone();
        sorted.sort();
        assert_eq!(strings, sorted);
    }

    #[test]
    fn set_and_slice() {
        let s = BitState::zeros(5).with(1, true).with(4, true);
        assert_eq!(s.to_string(), "01001");
        assert_eq!(s.slice(1, 3).to_string(), "100");
    }
}
