use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use splitcut::corner::{lift_program, CornerRelaxation, CutCoefficients, Disjunction};
use splitcut::cutfn::{AlphaCut, GmiFunction};
use splitcut::exact::{parse_rational, IntVector, Rational, RationalVector};
use splitcut::experiments::{default_cap, ip_optimum_bruteforce, make_bad_family, run_gap_experiment, GapReport};
use splitcut::instance::InstanceFile;
use splitcut::separation::{deepest_disjunctive_cut, split_closure_optimize, verify_split_cut, ClosureStrategy, Optimum};
use splitcut::Error;

/// Exact split cuts and split closures for corner relaxations.
#[derive(Parser)]
#[command(name = "splitcut", version)]
struct Cli {
    /// Emit CSV instead of text.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One-row GMI coefficients at anchor F.
    Gmi {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Continuous column values.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        r: Vec<String>,
        /// Integer column values.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        q: Vec<String>,
    },
    /// Alpha-cut coefficients of every column of an instance.
    AlphaCut {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Print the lifted instance with last coordinates ELL on the integer columns.
    Lift {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long, allow_hyphen_values = true)]
        ell: String,
    },
    /// Check a cut over both sides of a split disjunction.
    VerifySplit {
        #[command(flatten)]
        input: InstanceArg,
        #[command(flatten)]
        disjunction: DisjunctionArg,
        /// Coefficients of the continuous columns.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        psi: String,
        /// Coefficients of the integer columns.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        pi: String,
    },
    /// Strongest cut valid over a split disjunction.
    DeepestCut {
        #[command(flatten)]
        input: InstanceArg,
        #[command(flatten)]
        disjunction: DisjunctionArg,
    },
    /// Minimize over the split closure.
    Closure {
        #[command(flatten)]
        input: InstanceArg,
        /// Objective over the continuous then integer columns; all ones by default.
        #[arg(long, allow_hyphen_values = true)]
        objective: Option<String>,
        /// Use every alpha in [-A, A]^n instead of one period (lower bound only).
        #[arg(long = "box")]
        box_bound: Option<u32>,
    },
    /// Brute-force integer optimum of a pure-integer instance.
    IpOpt {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long, allow_hyphen_values = true)]
        objective: Option<String>,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Integer optimum versus split-closure optimum on the epsilon family.
    Gap {
        /// One or more values, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        epsilon: Vec<String>,
        #[arg(long)]
        cap: Option<u64>,
        /// Also print the coefficients of every alpha-cut.
        #[arg(long)]
        table: bool,
    },
    /// Print the epsilon family as an instance file.
    Family {
        #[arg(long)]
        epsilon: String,
    },
}

#[derive(Args)]
struct InstanceArg {
    /// Instance file.
    #[arg(long, conflicts_with = "epsilon")]
    instance: Option<PathBuf>,
    /// Use the epsilon family instead of a file.
    #[arg(long)]
    epsilon: Option<String>,
}

#[derive(Args)]
struct DisjunctionArg {
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    /// Integer shift per integer column; zero by default.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
}

const INPUT_ERROR: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(INPUT_ERROR) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

impl InstanceArg {
    fn load(&self) -> splitcut::Result<InstanceFile> {
        match (&self.instance, &self.epsilon) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                InstanceFile::parse(&text)
            }
            (None, Some(eps)) => {
                let eps = parse_rational(eps)?;
                Ok(InstanceFile {
                    name: None,
                    epsilon: Some(eps.clone()),
                    relaxation: make_bad_family(&eps)?,
                })
            }
            _ => Err(Error::Parse("give --instance FILE or --epsilon VALUE".into())),
        }
    }
}

impl DisjunctionArg {
    fn build(&self, rel: &CornerRelaxation) -> splitcut::Result<Disjunction> {
        let alpha = IntVector::parse(&self.alpha)?;
        match &self.beta {
            None => Disjunction::on_x(rel, alpha),
            Some(b) => Disjunction::new(rel, alpha, IntVector::parse(b)?.entries().to_vec()),
        }
    }
}

fn rationals(values: &[String]) -> splitcut::Result<Vec<Rational>> {
    values.iter().map(|v| parse_rational(v)).collect()
}

fn join(values: &[Rational], sep: &str) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn print_cut(rel: &CornerRelaxation, cut: &CutCoefficients, csv: bool) {
    if csv {
        println!("kind,column,coefficient");
    }
    for (r, v) in rel.r_cols().iter().zip(&cut.psi) {
        if csv {
            println!("r,{r},{v}");
        } else {
            println!("psi({r}) = {v}");
        }
    }
    for (q, v) in rel.q_cols().iter().zip(&cut.pi) {
        if csv {
            println!("q,{q},{v}");
        } else {
            println!("pi({q}) = {v}");
        }
    }
}

fn objective_for(rel: &CornerRelaxation, text: &Option<String>) -> splitcut::Result<Vec<Rational>> {
    match text {
        None => Ok(vec![Rational::from_integer(1.into()); rel.num_columns()]),
        Some(t) => Ok(RationalVector::parse(t)?.into_entries()),
    }
}

fn run(cli: Cli) -> splitcut::Result<u8> {
    let csv = cli.csv;
    match cli.command {
        Command::Gmi { f, r, q } => {
            let g = GmiFunction::new(&parse_rational(&f)?)?;
            if csv {
                println!("kind,value,coefficient");
            }
            for (kind, vals) in [("r", rationals(&r)?), ("q", rationals(&q)?)] {
                for v in vals {
                    let c = if kind == "r" { g.psi(&v) } else { g.pi(&v) };
                    if csv {
                        println!("{kind},{v},{c}");
                    } else {
                        let name = if kind == "r" { "psi" } else { "pi" };
                        println!("{name}({v}) = {c}");
                    }
                }
            }
            Ok(0)
        }
        Command::AlphaCut { input, alpha } => {
            let rel = input.load()?.relaxation;
            let cut = AlphaCut::new(IntVector::parse(&alpha)?, rel.f().clone())?;
            print_cut(&rel, &CutCoefficients::alpha_cut(&rel, &cut)?, csv);
            Ok(0)
        }
        Command::Lift { input, ell } => {
            let inst = input.load()?;
            let ell: Vec<BigInt> = IntVector::parse(&ell)?.entries().to_vec();
            let lifted = lift_program(&inst.relaxation, ell)?;
            print!("{}", InstanceFile::new(lifted.relaxation()));
            Ok(0)
        }
        Command::VerifySplit { input, disjunction, psi, pi } => {
            let rel = input.load()?.relaxation;
            let d = disjunction.build(&rel)?;
            let cut = CutCoefficients::new(RationalVector::parse(&psi)?.into_entries(), RationalVector::parse(&pi)?.into_entries())?;
            let check = verify_split_cut(&rel, &cut, &d)?;
            let side = |o: &Optimum| match o {
                Optimum::Infeasible => "empty".to_string(),
                Optimum::Unbounded => "unbounded".to_string(),
                Optimum::Finite { value, .. } => value.to_string(),
            };
            if csv {
                println!("valid,lower_side_min,upper_side_min");
                println!("{},{},{}", check.valid, side(&check.sides[0]), side(&check.sides[1]));
            } else {
                println!("lower side minimum  {}", side(&check.sides[0]));
                println!("upper side minimum  {}", side(&check.sides[1]));
                println!("valid               {}", check.valid);
                if let Some(w) = &check.witness {
                    println!("witness             x = ({}), s = ({}), y = ({})", w.x, join(&w.s, ", "), join(&w.y, ", "));
                }
            }
            Ok(if check.valid { 0 } else { 1 })
        }
        Command::DeepestCut { input, disjunction } => {
            let rel = input.load()?.relaxation;
            let d = disjunction.build(&rel)?;
            print_cut(&rel, &deepest_disjunctive_cut(&rel, &d)?, csv);
            Ok(0)
        }
        Command::Closure { input, objective, box_bound } => {
            let rel = input.load()?.relaxation;
            let objective = objective_for(&rel, &objective)?;
            let strategy = box_bound.map_or(ClosureStrategy::Period, ClosureStrategy::Box);
            let res = split_closure_optimize(&rel, &objective, strategy)?;
            let (value, point) = match &res.optimum {
                Optimum::Finite { value, point } => (value.to_string(), Some(point)),
                Optimum::Infeasible => ("infeasible".to_string(), None),
                Optimum::Unbounded => ("unbounded".to_string(), None),
            };
            let label = if res.exact { "exact" } else { "approximate" };
            let period = res.period.as_ref().map_or("-".to_string(), ToString::to_string);
            if csv {
                println!("closure_opt,kind,alpha_period,cuts");
                println!("{value},{label},{period},{}", res.family_size);
            } else {
                println!("closure optimum  {value} ({label})");
                if let Some(p) = point {
                    println!("at               s = ({}), y = ({}), x = ({})", join(&p.s, ", "), join(&p.y, ", "), p.x);
                }
                println!("alpha period     {period}");
                println!("alpha-cuts       {}", res.family_size);
                let b: Vec<String> = res.binding.iter().map(|a| format!("({a})")).collect();
                println!("binding          {}", b.join(" "));
            }
            Ok(0)
        }
        Command::IpOpt { input, objective, cap } => {
            let inst = input.load()?;
            let rel = &inst.relaxation;
            let objective = objective_for(rel, &objective)?;
            let cap = match (cap, &inst.epsilon) {
                (Some(c), _) => c,
                (None, Some(eps)) => default_cap(eps)?,
                (None, None) => 12,
            };
            let best = ip_optimum_bruteforce(rel, &objective, cap)?;
            let (value, certified) = match &best {
                Some(b) => (b.value.to_string(), b.certified),
                None => ("none".to_string(), false),
            };
            if csv {
                println!("ip_opt,cap,certified");
                println!("{value},{cap},{certified}");
            } else {
                println!("ip optimum  {value}");
                if let Some(b) = &best {
                    println!("at          y = ({}), x = ({})", join(&b.witness.y, ", "), b.witness.x);
                }
                let note = if certified {
                    "no point beyond the cap can do better"
                } else {
                    "points beyond the cap were not ruled out"
                };
                println!("cap         {cap} ({note})");
            }
            Ok(if certified { 0 } else { 2 })
        }
        Command::Gap { epsilon, cap, table } => {
            let reports: Vec<GapReport> = epsilon
                .iter()
                .map(|e| run_gap_experiment(&parse_rational(e)?, cap))
                .collect::<splitcut::Result<_>>()?;
            if csv {
                println!("{}", GapReport::CSV_HEADER);
                for r in &reports {
                    println!("{}", r.csv_row());
                }
            } else {
                for (i, r) in reports.iter().enumerate() {
                    if i > 0 {
                        println!();
                    }
                    print!("{}", r.to_text(table));
                }
            }
            // a violation outranks an inconclusive run
            let codes: Vec<i32> = reports.iter().map(|r| r.status.exit_code()).collect();
            Ok(if codes.contains(&1) { 1 } else { codes.into_iter().max().unwrap_or(0) as u8 })
        }
        Command::Family { epsilon } => {
            let eps = parse_rational(&epsilon)?;
            let inst = InstanceFile {
                name: Some(format!("eps-{}", epsilon.replace('/', "-"))),
                epsilon: Some(eps.clone()),
                relaxation: make_bad_family(&eps)?,
            };
            print!("{inst}");
            Ok(0)
        }
    }
}
