use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use misere::cache::{QuotientCache, CACHE_DIR_ENV};
use misere::catalog::{verify_published, Catalog, VerificationReport, VerifyLimits};
use misere::games::{parse_game_expr, parse_octal_code, Alphabet, GameDag, MisereOracle, OctalCode, Position};
use misere::heaps::{solve_octal_with, OctalLimits};
use misere::periodic::{ap_outcome, ap_phi_position, ApGame};
use misere::report::{GameReport, SolveReport};
use misere::solver::{solve_with, QuotientSolution, Solver, SolverConfig};

#[derive(Parser, Debug)]
#[command(name = "misere", version, about = "Misère quotients of impartial games")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Largest candidate monoid.
    #[arg(long, default_value_t = 4096, value_parser = clap::value_parser!(u64).range(1..), global = true)]
    max_elements: u64,

    /// Search nodes per verification pass.
    #[arg(long, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..), global = true)]
    max_nodes: u64,

    /// Wall-clock limit in seconds.
    #[arg(long, default_value_t = 600, value_parser = clap::value_parser!(u64).range(1..), global = true)]
    max_seconds: u64,

    /// Directory of the quotient cache (no caching when unset).
    #[arg(long, env = CACHE_DIR_ENV, global = true)]
    cache_dir: Option<PathBuf>,

    /// Verify interpolated heaps too.
    #[arg(long, global = true)]
    paranoid: bool,

    /// Disable mex interpolation and value reuse.
    #[arg(long, global = true)]
    no_shortcuts: bool,

    /// Print solver trace records to stderr as JSON lines.
    #[arg(long, global = true)]
    trace: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an octal game heap by heap.
    Solve {
        code: String,
        /// Solve exactly this many heaps; by default stop once a period is
        /// observed.
        #[arg(long)]
        heaps: Option<usize>,
        /// Heap cap when solving until a period shows up.
        #[arg(long, default_value_t = 120)]
        max_heaps: usize,
    },
    /// Solve the closed set generated by an explicit game, e.g. `*2+{0,*2}`.
    SolveGame { expr: String },
    /// Brute-force outcome of a heap position.
    Outcome {
        code: String,
        #[arg(required = true)]
        heaps: Vec<usize>,
    },
    /// Brute-force outcome of an explicit game.
    OutcomeExpr { expr: String },
    /// Check builtin published solutions against brute-force outcomes.
    Verify {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        code: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 20)]
        beans: usize,
    },
    /// Orders of the partial quotients.
    Partials {
        code: String,
        #[arg(long)]
        to: usize,
        /// Instead of heap counts, repeat the code's digits 1..=TO times and
        /// report each full quotient, as in `0.(3310)^k`.
        #[arg(long)]
        repeat: bool,
    },
    /// The symbolic quotients of 0.26 and 4.7.
    Ap {
        #[command(subcommand)]
        command: ApCommand,
    },
}

#[derive(Subcommand, Debug)]
enum ApCommand {
    /// Compare brute force, Allemang's closed form and the quotient on every
    /// position of at most BEANS beans.
    Check {
        game: String,
        #[arg(long, default_value_t = 24)]
        beans: usize,
    },
}

/// An error with its exit status.
struct Failure {
    status: u8,
    message: String,
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure {
        status: 2,
        message: e.to_string(),
    }
}

struct App {
    cli: Cli,
}

impl App {
    fn config(&self) -> SolverConfig {
        let mut config = SolverConfig::default();
        config.policy.max_elements = self.cli.max_elements as usize;
        config.max_nodes = self.cli.max_nodes as usize;
        config.time_limit = Some(Duration::from_secs(self.cli.max_seconds));
        config.shortcuts = !self.cli.no_shortcuts;
        config.paranoid = self.cli.paranoid;
        config
    }

    fn solver(&self) -> Solver {
        let solver = Solver::new(self.config());
        if self.cli.trace {
            solver.with_sink(Box::new(|ev| {
                if let Ok(line) = serde_json::to_string(ev) {
                    eprintln!("{line}");
                }
            }))
        } else {
            solver
        }
    }

    fn emit(&self, text: String, value: serde_json::Value) {
        let out = match self.cli.format {
            Format::Text => text,
            Format::Json => serde_json::to_string_pretty(&value).expect("serializable") + "\n",
        };
        // A closed pipe (e.g. `| head`) is not an error worth reporting.
        let _ = std::io::stdout().lock().write_all(out.as_bytes());
    }

    fn solve_cached(&self, code: &OctalCode, limits: OctalLimits, request: &str) -> QuotientSolution {
        let cache = QuotientCache::locate(self.cli.cache_dir.as_deref());
        if let Some(hit) = cache.as_ref().and_then(|c| c.load(code, request)) {
            return hit;
        }
        let sol = solve_octal_with(&mut self.solver(), code, limits, |_| {});
        if let Some(c) = &cache {
            if let Err(e) = c.store(code, request, &sol) {
                eprintln!("warning: {e}");
            }
        }
        sol
    }

    fn run(&self) -> Result<u8, Failure> {
        match &self.cli.command {
            Command::Solve { code, heaps, max_heaps } => {
                let code = parse_octal_code(code).map_err(usage)?;
                let (limits, request) = match heaps {
                    Some(n) => (OctalLimits::heaps(*n), format!("heaps={n}")),
                    None => (OctalLimits::until_period(*max_heaps), format!("period<={max_heaps}")),
                };
                let sol = self.solve_cached(&code, limits, &request);
                let report = SolveReport::new(&code, &sol).map_err(usage)?;
                self.emit(report.to_text(), serde_json::to_value(&report).expect("serializable"));
                Ok(if report.converged { 0 } else { 2 })
            }
            Command::SolveGame { expr } => {
                let dag = parse_game_expr(expr).map_err(usage)?;
                let alphabet = dag_alphabet(&dag)?;
                let sol = solve_with(&mut self.solver(), &alphabet);
                let report = GameReport::new(&render_summands(&dag), &sol);
                self.emit(report.to_text(), serde_json::to_value(&report).expect("serializable"));
                Ok(if report.converged { 0 } else { 2 })
            }
            Command::Outcome { code, heaps } => {
                let parsed = parse_octal_code(code).map_err(usage)?;
                let max = heaps.iter().copied().max().unwrap_or(0);
                let alphabet = Alphabet::for_code(&parsed, max);
                let x = alphabet.heaps(heaps).map_err(usage)?;
                let outcome = MisereOracle::new(&alphabet).outcome(&x).map_err(usage)?;
                self.emit(
                    format!("{outcome}\n"),
                    json!({"code": parsed.to_string(), "heaps": heaps, "outcome": outcome}),
                );
                Ok(0)
            }
            Command::OutcomeExpr { expr } => {
                let dag = parse_game_expr(expr).map_err(usage)?;
                let alphabet = dag_alphabet(&dag)?;
                let gens = dag.followers(dag.summands());
                let mut x = Position::empty();
                for s in dag.summands() {
                    x.add(gens.iter().position(|g| g == s).expect("summands are followers"), 1);
                }
                let outcome = MisereOracle::new(&alphabet).outcome(&x).map_err(usage)?;
                self.emit(
                    format!("{outcome}\n"),
                    json!({"game": render_summands(&dag), "outcome": outcome}),
                );
                Ok(0)
            }
            Command::Verify { code, all, beans } => self.verify(code.as_deref(), *all, *beans),
            Command::Partials { code, to, repeat } => self.partials(code, *to, *repeat),
            Command::Ap {
                command: ApCommand::Check { game, beans },
            } => self.ap_check(game, *beans),
        }
    }

    fn verify(&self, code: Option<&str>, all: bool, beans: usize) -> Result<u8, Failure> {
        let catalog = Catalog::builtin();
        let records: Vec<_> = if all {
            catalog.solutions.iter().collect()
        } else {
            let c = parse_octal_code(code.expect("clap requires a code")).map_err(usage)?;
            vec![catalog
                .solution(&c)
                .ok_or_else(|| usage(format!("no builtin record for {c}")))?]
        };
        let limits = VerifyLimits {
            beans,
            ..VerifyLimits::default()
        };
        let reports: Vec<VerificationReport> = records.iter().map(|r| verify_published(r, limits)).collect();
        let mut text = String::new();
        for r in &reports {
            text.push_str(&format!(
                "{:<8} beans {:>2}  order {:>3}  consistent {:<5}  reduced {:<5}  name {}{}{}\n",
                r.code,
                r.beans,
                r.order,
                r.consistent,
                r.reduced,
                r.claimed_name.as_deref().unwrap_or("-"),
                match r.iso_match {
                    Some(true) => " (isomorphic)",
                    Some(false) => " (NOT isomorphic)",
                    None => "",
                },
                r.witness
                    .as_deref()
                    .map(|w| format!("  witness {w}"))
                    .or_else(|| r.error.as_deref().map(|e| format!("  error {e}")))
                    .unwrap_or_default(),
            ));
        }
        self.emit(text, serde_json::to_value(&reports).expect("serializable"));
        if reports.iter().any(|r| r.error.is_some()) {
            return Ok(2);
        }
        let ok = reports
            .iter()
            .all(|r| r.consistent && r.reduced && r.iso_match != Some(false));
        Ok(if ok { 0 } else { 1 })
    }

    fn partials(&self, code: &str, to: usize, repeat: bool) -> Result<u8, Failure> {
        let parsed = parse_octal_code(code).map_err(usage)?;
        if !repeat {
            let sol = self.solve_cached(&parsed, OctalLimits::heaps(to), &format!("heaps={to}"));
            let orders: Vec<String> = sol.orders.iter().map(|o| o.to_string()).collect();
            self.emit(
                format!("{}\n", orders.join(" ")),
                json!({"code": parsed.to_string(), "orders": sol.orders, "converged": sol.converged}),
            );
            return Ok(if sol.converged { 0 } else { 2 });
        }
        if !parsed.cycle().is_empty() {
            return Err(usage("--repeat needs a finite code"));
        }
        let mut rows = Vec::new();
        let mut text = String::new();
        let mut converged = true;
        for k in 1..=to {
            let digits: Vec<u8> = parsed.prefix().repeat(k);
            let ck = OctalCode::new(parsed.whole_heap_digit(), digits, Vec::new()).map_err(usage)?;
            let sol = self.solve_cached(&ck, OctalLimits::until_period(200), "period<=200");
            converged &= sol.converged;
            let period = sol.period.map(|p| p.period);
            text.push_str(&format!(
                "{k}  {}  order {}  period {}\n",
                ck,
                sol.candidate.order(),
                period.map_or("-".into(), |p| p.to_string())
            ));
            rows.push(json!({"repeat": k, "code": ck.to_string(), "order": sol.candidate.order(), "period": period}));
        }
        self.emit(text, json!(rows));
        Ok(if converged { 0 } else { 2 })
    }

    fn ap_check(&self, game: &str, beans: usize) -> Result<u8, Failure> {
        let game: ApGame = game.parse().map_err(usage)?;
        let code = parse_octal_code(game.code()).expect("valid code");
        let alphabet = Alphabet::for_code(&code, beans.max(1));
        let mut oracle = MisereOracle::new(&alphabet);
        let positions = misere::catalog::heap_multisets(beans);
        let mut mismatches = Vec::new();
        for x in &positions {
            let brute = oracle.outcome(x).map_err(usage)?;
            let closed = ap_outcome(game, x);
            let quotient = ap_phi_position(game, x).in_p();
            if brute != closed || (brute == misere::games::Outcome::P) != quotient {
                mismatches.push(x.to_string());
            }
        }
        let text = match mismatches.first() {
            None => format!(
                "{game}: {} positions of at most {beans} beans agree (oracle, closed form, quotient)\n",
                positions.len()
            ),
            Some(w) => format!("{game}: {} disagreements, first at {w}\n", mismatches.len()),
        };
        self.emit(
            text,
            json!({"game": game, "beans": beans, "positions": positions.len(), "mismatches": mismatches}),
        );
        Ok(if mismatches.is_empty() { 0 } else { 1 })
    }
}

fn render_summands(dag: &GameDag) -> String {
    let parts: Vec<String> = dag.summands().iter().map(|&s| dag.render(s)).collect();
    parts.join("+")
}

fn dag_alphabet(dag: &GameDag) -> Result<Alphabet, Failure> {
    Alphabet::for_dag(dag, &dag.followers(dag.summands())).map_err(usage)
}

fn main() -> ExitCode {
    let app = App { cli: Cli::parse() };
    match app.run() {
        Ok(status) => ExitCode::from(status),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.status)
        }
    }
}
