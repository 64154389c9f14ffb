use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

use crate::algebra::IDENTITY;
use crate::games::{Alphabet, Position};

use super::{recalibrate, verify, Candidate, Failure, NVerification, RecalibrationPolicy, SearchLimits, SolverError};

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub policy: RecalibrationPolicy,
    /// Search nodes per verification pass.
    pub max_nodes: usize,
    pub time_limit: Option<Duration>,
    /// Heap-game shortcuts: mex interpolation and reuse of the previous
    /// monoid for a new heap.
    pub shortcuts: bool,
    /// Re-verify heaps whose value was interpolated.
    pub paranoid: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            policy: RecalibrationPolicy::default(),
            max_nodes: 10_000_000,
            time_limit: Some(Duration::from_secs(600)),
            shortcuts: true,
            paranoid: false,
        }
    }
}

fn display<T: std::fmt::Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// What the solver did for one step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Step {
    /// A dead generator, assigned the identity.
    Dead,
    /// A new heap whose value followed from the transition records.
    Interpolated,
    /// A new heap assigned an existing element, confirmed by verification.
    Reused,
    /// One recalibration of the candidate.
    Recalibrated,
    /// Verification passed.
    Converged,
}

/// One structured trace record.
#[derive(Clone, Debug, Serialize)]
pub struct TraceEvent {
    /// Number of generators in the alphabet being solved.
    pub generators: usize,
    pub step: Step,
    /// Order of the candidate after the step.
    pub order: usize,
    /// The failure this step repaired.
    #[serde(serialize_with = "display")]
    pub failure: Option<Position>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub freed: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    pub elapsed_ms: u64,
}

/// The outcome of a solver run over an alphabet or a prefix of it.
#[derive(Clone, Debug)]
pub struct QuotientSolution {
    pub labels: Vec<String>,
    /// Converged candidate over the first `solved` generators.
    pub candidate: Candidate,
    pub solved: usize,
    pub converged: bool,
    pub stop_reason: Option<String>,
    /// `|Q|` after each generator was added.
    pub orders: Vec<usize>,
    pub trace: Vec<TraceEvent>,
    pub period: Option<crate::heaps::Period>,
}

type TraceSink = Box<dyn FnMut(&TraceEvent)>;

/// Drives recalibration and verification, collecting a trace.
pub struct Solver {
    pub config: SolverConfig,
    start: Instant,
    trace: Vec<TraceEvent>,
    sink: Option<TraceSink>,
}

impl Solver {
    pub fn new(config: SolverConfig) -> Self {
        Solver {
            config,
            start: Instant::now(),
            trace: Vec::new(),
            sink: None,
        }
    }

    /// Also passes every trace record to `sink` as it is produced.
    pub fn with_sink(mut self, sink: Box<dyn FnMut(&TraceEvent)>) -> Self {
        self.sink = Some(sink);
        self
    }

    pub fn limits(&self) -> SearchLimits {
        SearchLimits {
            max_nodes: self.config.max_nodes,
            deadline: self.config.time_limit.map(|t| self.start + t),
        }
    }

    pub fn trace(&self) -> &[TraceEvent] {
        &self.trace
    }

    pub fn take_trace(&mut self) -> Vec<TraceEvent> {
        std::mem::take(&mut self.trace)
    }

    pub fn check_deadline(&self) -> Result<(), SolverError> {
        match self.limits().deadline {
            Some(d) if Instant::now() > d => Err(SolverError::Deadline { frontier: None }),
            _ => Ok(()),
        }
    }

    pub fn emit(&mut self, generators: usize, step: Step, order: usize, failure: Option<Position>) {
        self.emit_event(TraceEvent {
            generators,
            step,
            order,
            failure,
            freed: Vec::new(),
            n: None,
            k: None,
            elapsed_ms: self.start.elapsed().as_millis() as u64,
        });
    }

    fn emit_event(&mut self, ev: TraceEvent) {
        if let Some(sink) = self.sink.as_mut() {
            sink(&ev);
        }
        self.trace.push(ev);
    }

    /// Recalibrates from `c` with least failure `f` until verification
    /// passes; returns the converged candidate and its verification pass.
    pub fn converge(
        &mut self,
        mut c: Candidate,
        mut f: Failure,
        alphabet: &Alphabet,
    ) -> Result<(Candidate, NVerification), SolverError> {
        loop {
            self.check_deadline()?;
            let r = recalibrate(&c, &f, alphabet, &self.config.policy, self.limits())?;
            let freed = r.expansion.freed.iter().map(|&i| alphabet.get(i).label.clone()).collect();
            self.emit_event(TraceEvent {
                generators: alphabet.len(),
                step: Step::Recalibrated,
                order: r.candidate.order(),
                failure: Some(f.position.clone()),
                freed,
                n: Some(r.expansion.n),
                k: Some(r.expansion.k),
                elapsed_ms: self.start.elapsed().as_millis() as u64,
            });
            c = r.candidate;
            match r.failure {
                Some(next) => f = next,
                None => {
                    self.emit(alphabet.len(), Step::Converged, c.order(), None);
                    return Ok((c, r.verification));
                }
            }
        }
    }

    /// Solves the closed set on `alphabet` given the converged quotient of
    /// all but its last generator. Returns `None` for the verification when
    /// the last generator is dead (nothing changes).
    pub fn add_generator(
        &mut self,
        prev: &Candidate,
        alphabet: &Alphabet,
    ) -> Result<(Candidate, Option<NVerification>), SolverError> {
        let n = alphabet.len();
        let placeholder = prev.extended(IDENTITY, alphabet)?;
        if alphabet.is_dead(n - 1) {
            self.emit(n, Step::Dead, placeholder.order(), None);
            return Ok((placeholder, None));
        }
        // the new generator is freed first, as if it were the least failure
        let f = Failure {
            position: Position::generator(n - 1),
            kind: super::FailureKind::N,
        };
        let (c, nv) = self.converge(placeholder, f, alphabet)?;
        Ok((c, Some(nv)))
    }

    /// Runs both verifications on `c`.
    pub fn verify(&self, c: &Candidate) -> Result<(Option<Failure>, NVerification), SolverError> {
        verify(c, self.limits())
    }
}

/// The misère quotient of the closed set on `alphabet`, built generator by
/// generator. Budget exhaustion yields the last converged prefix, flagged.
pub fn solve_closed_set(alphabet: &Alphabet, config: &SolverConfig) -> QuotientSolution {
    let mut solver = Solver::new(config.clone());
    solve_with(&mut solver, alphabet)
}

pub fn solve_with(solver: &mut Solver, alphabet: &Alphabet) -> QuotientSolution {
    let labels: Vec<String> = alphabet.generators().iter().map(|g| g.label.clone()).collect();
    let mut c = Candidate::trivial(&Alphabet::default()).expect("empty alphabet");
    let mut orders = Vec::new();
    let mut stop_reason = None;
    for n in 1..=alphabet.len() {
        match solver.add_generator(&c, &alphabet.prefix(n)) {
            Ok((next, _)) => {
                c = next;
                orders.push(c.order());
            }
            Err(e) => {
                stop_reason = Some(e.to_string());
                break;
            }
        }
    }
    let solved = orders.len();
    QuotientSolution {
        labels,
        candidate: c,
        solved,
        converged: stop_reason.is_none(),
        stop_reason,
        orders,
        trace: solver.take_trace(),
        period: None,
    }
}
