//! Per-interval driver programs.
//!
//! Time is divided into intervals of `ticks_per_interval` ticks, grouped into
//! cycles of `intervals_per_cycle`. Every driver is told, at the first tick of
//! each interval, what to do during that interval: hold, ramp linearly to a
//! logic value over the whole interval, or (for deliberately broken designs)
//! step there at once.

use super::circuit::SignalId;
use super::SimError;

pub const DEFAULT_TICKS_PER_INTERVAL: usize = 16;
pub const DEFAULT_INTERVALS_PER_CYCLE: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transition {
    Hold,
    /// Linear ramp to the given logic value, landing on the last tick.
    Ramp(f64),
    /// Instantaneous change at the first tick. Never adiabatic.
    Step(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Waveform {
    /// `pattern[interval % pattern.len()]`.
    Periodic(Vec<Transition>),
    /// `program[interval]`, then hold forever.
    Sequence(Vec<Transition>),
    /// Reversible sink: at intervals `≡ sample_at (mod period)` it samples the
    /// logic value of `watch` and ramps to it; at `≡ release_at` it ramps back
    /// to 0. The samples are the circuit's observable output.
    Echo {
        watch: SignalId,
        period: usize,
        sample_at: usize,
        release_at: usize,
    },
}

impl Waveform {
    /// Transition for `interval`; `watched` is the current logic value of an
    /// echo's watched signal.
    pub fn transition(
        &self,
        interval: usize,
        watched: impl FnOnce(SignalId) -> bool,
    ) -> Transition {
        match self {
            Waveform::Periodic(p) if p.is_empty() => Transition::Hold,
            Waveform::Periodic(p) => p[interval % p.len()],
            Waveform::Sequence(s) => s.get(interval).copied().unwrap_or(Transition::Hold),
            Waveform::Echo {
                watch,
                period,
                sample_at,
                release_at,
            } => {
                let phase = interval % period;
                if phase == *sample_at {
                    Transition::Ramp(if watched(*watch) { 1.0 } else { 0.0 })
                } else if phase == *release_at {
                    Transition::Ramp(0.0)
                } else {
                    Transition::Hold
                }
            }
        }
    }

    fn transitions(&self) -> &[Transition] {
        match self {
            Waveform::Periodic(t) | Waveform::Sequence(t) => t,
            Waveform::Echo { .. } => &[],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Driver {
    pub signal: SignalId,
    pub waveform: Waveform,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClockSchedule {
    pub ticks_per_interval: usize,
    pub intervals_per_cycle: usize,
    pub drivers: Vec<Driver>,
}

impl Default for ClockSchedule {
    fn default() -> Self {
        Self {
            ticks_per_interval: DEFAULT_TICKS_PER_INTERVAL,
            intervals_per_cycle: DEFAULT_INTERVALS_PER_CYCLE,
            drivers: Vec::new(),
        }
    }
}

impl ClockSchedule {
    pub fn new(ticks_per_interval: usize, intervals_per_cycle: usize) -> Result<Self, SimError> {
        if ticks_per_interval == 0 || intervals_per_cycle == 0 {
            return Err(SimError::Build(
                "ticks per interval and intervals per cycle must be positive".into(),
            ));
        }
        Ok(Self {
            ticks_per_interval,
            intervals_per_cycle,
            drivers: Vec::new(),
        })
    }

    /// Attach a driver; each signal may have at most one.
    pub fn drive(&mut self, signal: SignalId, waveform: Waveform) -> Result<(), SimError> {
        if self.driver_of(signal).is_some() {
            return Err(SimError::Build(format!(
                "signal {} already has a driver",
                signal.0
            )));
        }
        for t in waveform.transitions() {
            if let Transition::Ramp(v) | Transition::Step(v) = t {
                if !(0.0..=1.0).contains(v) {
                    return Err(SimError::Build(format!("driver target {v} outside [0, 1]")));
                }
            }
        }
        if let Waveform::Echo {
            period,
            sample_at,
            release_at,
            ..
        } = waveform
        {
            if period == 0 || sample_at >= period || release_at >= period || sample_at == release_at
            {
                return Err(SimError::Build("malformed echo waveform".into()));
            }
        }
        self.drivers.push(Driver { signal, waveform });
        Ok(())
    }

    pub fn driver_of(&self, signal: SignalId) -> Option<&Driver> {
        self.drivers.iter().find(|d| d.signal == signal)
    }

    /// Overwrite what a `Sequence` driver does in one interval.
    pub fn set_transition(
        &mut self,
        signal: SignalId,
        interval: usize,
        t: Transition,
    ) -> Result<(), SimError> {
        let driver = self
            .drivers
            .iter_mut()
            .find(|d| d.signal == signal)
            .ok_or_else(|| SimError::Build(format!("signal {} has no driver", signal.0)))?;
        match &mut driver.waveform {
            Waveform::Sequence(s) => {
                if s.len() <= interval {
                    s.resize(interval + 1, Transition::Hold);
                }
                s[interval] = t;
                Ok(())
            }
            _ => Err(SimError::Build(
                "only sequence drivers can be reprogrammed per interval".into(),
            )),
        }
    }

    /// A driver transition is adiabatic only if it is a ramp spanning a full
    /// interval; returns the first programmed `Step`, if any.
    pub fn first_step(&self) -> Option<(SignalId, usize)> {
        self.drivers.iter().find_map(|d| {
            d.waveform
                .transitions()
                .iter()
                .position(|t| matches!(t, Transition::Step(_)))
                .map(|i| (d.signal, i))
        })
    }
}

/// Periodic clock of a 4-interval cycle: ramps up in interval `phase`, holds,
/// ramps down two intervals later, then rests.
pub fn phase_clock(phase: usize, period: usize) -> Waveform {
    let mut p = vec![Transition::Hold; period];
    p[phase % period] = Transition::Ramp(1.0);
    p[(phase + 2) % period] = Transition::Ramp(0.0);
    Waveform::Periodic(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_clock_pattern() {
        let w = phase_clock(3, 4);
        let t: Vec<_> = (0..8).map(|i| w.transition(i, |_| false)).collect();
        assert_eq!(t[3], Transition::Ramp(1.0));
        assert_eq!(t[5], Transition::Ramp(0.0));
        assert_eq!(t[7], Transition::Ramp(1.0));
        assert_eq!(t[4], Transition::Hold);
    }

    #[test]
    fn echo_samples() {
        let w = Waveform::Echo {
            watch: SignalId(0),
            period: 4,
            sample_at: 1,
            release_at: 3,
        };
        assert_eq!(w.transition(5, |_| true), Transition::Ramp(1.0));
        assert_eq!(w.transition(5, |_| false), Transition::Ramp(0.0));
        assert_eq!(w.transition(7, |_| true), Transition::Ramp(0.0));
        assert_eq!(w.transition(6, |_| true), Transition::Hold);
    }

    #[test]
    fn schedule_validation() {
        let mut s = ClockSchedule::default();
        s.drive(SignalId(0), Waveform::Sequence(vec![Transition::Ramp(1.0)]))
            .unwrap();
        assert!(s.drive(SignalId(0), Waveform::Sequence(vec![])).is_err());
        assert!(s
            .drive(SignalId(1), Waveform::Sequence(vec![Transition::Ramp(2.0)]))
            .is_err());
        assert!(ClockSchedule::new(0, 4).is_err());
        s.set_transition(SignalId(0), 3, Transition::Step(0.0))
            .unwrap();
        assert_eq!(s.first_step(), Some((SignalId(0), 3)));
        assert_eq!(
            s.driver_of(SignalId(0))
                .unwrap()
                .waveform
                .transition(2, |_| false),
            Transition::Hold
        );
    }
}
