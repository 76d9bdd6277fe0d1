use rand::Rng;

use super::state::{BitState, StateSpace};
use super::GrcError;

/// Allowed deviation of the total mass from one.
pub const MASS_TOLERANCE: f64 = 1e-12;

/// A probability mass function over a [`StateSpace`], stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    space: StateSpace,
    mass: Vec<f64>,
}

impl Distribution {
    pub fn new(space: StateSpace, mass: Vec<f64>) -> Result<Self, GrcError> {
        if mass.len() != space.size() {
            return Err(GrcError::InvalidDistribution(format!(
                "expected {} entries, got {}",
                space.size(),
                mass.len()
            )));
        }
        if let Some((i, p)) = mass
            .iter()
            .enumerate()
            .find(|(_, p)| !(p.is_finite() && **p >= 0.0))
        {
            return Err(GrcError::InvalidDistribution(format!(
                "state {} has invalid mass {p}",
                space.state(i)
            )));
        }
        let total: f64 = mass.iter().sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(GrcError::InvalidDistribution(format!(
                "masses sum to {total}, not 1"
            )));
        }
        Ok(Self { space, mass })
    }

    pub fn from_pairs(
        space: StateSpace,
        pairs: impl IntoIterator<Item = (BitState, f64)>,
    ) -> Result<Self, GrcError> {
        let mut mass = vec![0.0; space.size()];
        for (state, p) in pairs {
            if !space.contains(&state) {
                return Err(GrcError::SpaceMismatch);
            }
            mass[state.index()] += p;
        }
        Self::new(space, mass)
    }

    pub fn uniform(space: StateSpace) -> Self {
        let p = 1.0 / space.size() as f64;
        Self {
            space,
            mass: vec![p; space.size()],
        }
    }

    /// Uniform over the states accepted by `keep`.
    pub fn uniform_over(
        space: StateSpace,
        keep: impl Fn(BitState) -> bool,
    ) -> Result<Self, GrcError> {
        let support: Vec<usize> = space
            .states()
            .filter(|s| keep(*s))
            .map(|s| s.index())
            .collect();
        if support.is_empty() {
            return Err(GrcError::InvalidDistribution("empty support".into()));
        }
        let p = 1.0 / support.len() as f64;
        let mut mass = vec![0.0; space.size()];
        for i in support {
            mass[i] = p;
        }
        Ok(Self { space, mass })
    }

    pub fn point(state: BitState) -> Result<Self, GrcError> {
        let space = StateSpace::new(state.width())?;
        let mut mass = vec![0.0; space.size()];
        mass[state.index()] = 1.0;
        Ok(Self { space, mass })
    }

    /// Random masses over the states accepted by `keep`, normalized by
    /// dividing by the sum. Some states may randomly get zero mass.
    pub fn random_over<R: Rng + ?Sized>(
        space: StateSpace,
        rng: &mut R,
        keep: impl Fn(BitState) -> bool,
    ) -> Result<Self, GrcError> {
        let mut mass: Vec<f64> = space
            .states()
            .map(|s| {
                if !keep(s) || rng.gen_bool(0.2) {
                    0.0
                } else {
                    rng.gen::<f64>()
                }
            })
            .collect();
        if mass.iter().all(|p| *p == 0.0) {
            let first = space
                .states()
                .find(|s| keep(*s))
                .ok_or_else(|| GrcError::InvalidDistribution("empty support".into()))?;
            mass[first.index()] = 1.0;
        }
        let total: f64 = mass.iter().sum();
        mass.iter_mut().for_each(|p| *p /= total);
        Self::new(space, mass)
    }

    pub fn space(&self) -> StateSpace {
        self.space
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn probability(&self, state: BitState) -> f64 {
        self.mass[state.index()]
    }

    pub fn support(&self) -> impl Iterator<Item = BitState> + '_ {
        self.space.states().filter(|s| self.mass[s.index()] > 0.0)
    }

    pub fn total(&self) -> f64 {
        self.mass.iter().sum()
    }

    pub(crate) fn from_parts_unchecked(space: StateSpace, mass: Vec<f64>) -> Self {
        Self { space, mass }
    }
}

/// Shannon entropy in bits.
///
/// Terms are summed in ascending order of probability, so the result depends
/// only on the multiset of masses and is exactly invariant under relabeling
/// of states.
pub fn entropy(dist: &Distribution) -> f64 {
    let mut support: Vec<f64> = dist.mass.iter().copied().filter(|p| *p > 0.0).collect();
    support.sort_by(f64::total_cmp);
    let h: f64 = support.iter().map(|p| -p * p.log2()).sum();
    // a single point mass gives -0.0
    h.max(0.0)
}
