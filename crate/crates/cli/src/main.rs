use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use fbc_core::brinkmann::brinkmann_cp;
use fbc_core::cfl::{constrained_conjugacy, Cfg};
use fbc_core::oracle::{self, DEFAULT_CAP};
use fbc_core::twisted::{compute_ea, twisted_conjugator};
use fbc_core::word::conjugacy_witness;
use fbc_core::{
    build_centralizer_nfa, centralize, conjugators, parse_presentation, Budget, Decision, FbcElement,
    GroupPresentation, Word,
};

const DISCLAIMER: &str = "the grammar is assumed to generate every word spelling an element of K; this is not checked";

#[derive(Parser)]
#[command(name = "fbc", version, about = "Centralizers and conjugacy in free-by-cyclic groups")]
struct Cli {
    /// Presentation file (`rank = n`, `gens = ...`, `phi g = word`).
    #[arg(short = 'p', long = "presentation", global = true)]
    presentation: Option<PathBuf>,
    /// Maximal conjugator length searched.
    #[arg(long, global = true, default_value_t = 6)]
    radius: usize,
    /// Maximal exponent scanned in orbit searches.
    #[arg(long, global = true, default_value_t = 12)]
    kmax: u32,
    /// Stable `key value` output.
    #[arg(long, global = true)]
    porcelain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form `t^a u` of an element.
    Nf { element: String },
    /// Product of the given elements, left to right.
    Mul {
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Whether two elements commute.
    Commute { g: String, h: String },
    /// Conjugacy of two words in the free group: `x = z^-1 y z`.
    Conjugacy { x: String, y: String },
    /// Twisted conjugacy `x = (z^-1 ψ) y z` with `ψ = φ^power`.
    Twisted {
        x: String,
        y: String,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        power: i64,
    },
    /// Smallest |k| with `x φ^k` conjugate to `y`.
    Brinkmann { x: String, y: String },
    /// The generator `e_a` of `{ k | x φ^k ~_(φ^a) x }`.
    Ea {
        x: String,
        #[arg(allow_negative_numbers = true)]
        a: i64,
    },
    /// Finite generating set of the centralizer of an element.
    Centralizer {
        element: String,
        /// Also write the centralizer automaton to this file.
        #[arg(long)]
        automaton: Option<PathBuf>,
    },
    /// All `w` with `w^-1 g w = h`, as a coset of the centralizer of `g`.
    Conjugators { g: String, h: String },
    /// Is there `w` in K with `w^-1 h w = g`, K given by a grammar?
    CfCheck {
        g: String,
        h: String,
        /// Grammar file generating the full preimage of K.
        #[arg(long)]
        grammar: PathBuf,
    },
    /// Exhaustive enumeration on small balls.
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
}

#[derive(Subcommand)]
enum OracleQuery {
    /// All `t^b y` with `|b| <= max-t`, `|y| <= max-len`.
    Ball {
        #[arg(long)]
        max_t: u32,
        #[arg(long)]
        max_len: usize,
    },
    /// Ball elements commuting with an element.
    Centralizer {
        element: String,
        #[arg(long)]
        max_t: u32,
        #[arg(long)]
        max_len: usize,
    },
    /// `(z^-1 ψ) x z` for all `|z| <= max-len`, with `ψ = φ^power`.
    Twisted {
        x: String,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        power: i64,
        #[arg(long)]
        max_len: usize,
    },
    /// Exponents `|k| <= kmax` in `E_a`, by search over `|z| <= max-len`.
    Ea {
        x: String,
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(long)]
        max_len: usize,
    },
}

/// Collects output lines; keys are shared between the two modes.
struct Out {
    porcelain: bool,
    lines: Vec<String>,
}

impl Out {
    /// `key value` in porcelain mode, `key: value` otherwise.
    fn kv(&mut self, key: &str, value: impl AsRef<str>) {
        let sep = if self.porcelain { " " } else { ": " };
        self.lines.push(format!("{key}{sep}{}", value.as_ref()));
    }

    /// A bare value in human mode, `key value` in porcelain mode.
    fn value(&mut self, key: &str, value: impl AsRef<str>) {
        if self.porcelain {
            self.kv(key, value);
        } else {
            self.lines.push(value.as_ref().to_string());
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Decided,
    Unknown,
}

fn load_presentation(path: Option<&Path>) -> Result<GroupPresentation> {
    let path = path.ok_or_else(|| anyhow!("a presentation file is required (-p/--presentation)"))?;
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_presentation(&text).with_context(|| format!("{}", path.display()))
}

fn element(pres: &GroupPresentation, s: &str) -> Result<FbcElement> {
    pres.parse_element(s).with_context(|| format!("in element `{s}`"))
}

fn word(pres: &GroupPresentation, s: &str) -> Result<Word> {
    pres.alphabet().parse_word(s).with_context(|| format!("in word `{s}`"))
}

fn decision<T>(out: &mut Out, d: Decision<T>, mut on_yes: impl FnMut(&mut Out, T)) -> Outcome {
    match d {
        Decision::Yes(t) => {
            out.value("decision", "yes");
            on_yes(out, t);
            Outcome::Decided
        }
        Decision::No => {
            out.value("decision", "no");
            Outcome::Decided
        }
        Decision::Unknown(e) => {
            out.value("decision", "unknown");
            out.kv("reason", e.reason);
            Outcome::Unknown
        }
    }
}

fn run(cli: Cli, out: &mut Out) -> Result<Outcome> {
    let pres = load_presentation(cli.presentation.as_deref())?;
    let budget = Budget::new(cli.radius, cli.kmax);
    let fmt_el = |g: &FbcElement| pres.format_element(g);
    let fmt_w = |w: &Word| pres.alphabet().format_word(w);

    match cli.command {
        Command::Nf { element: e } => {
            let g = element(&pres, &e)?;
            out.value("element", fmt_el(&g));
        }
        Command::Mul { elements } => {
            let gs = elements.iter().map(|e| element(&pres, e)).collect::<Result<Vec<_>>>()?;
            out.value("element", fmt_el(&pres.product(&gs)));
        }
        Command::Commute { g, h } => {
            let (g, h) = (element(&pres, &g)?, element(&pres, &h)?);
            out.value("commute", pres.commute(&g, &h).to_string());
        }
        Command::Conjugacy { x, y } => {
            let (x, y) = (word(&pres, &x)?, word(&pres, &y)?);
            let d = match conjugacy_witness(&x, &y) {
                Some(z) => Decision::Yes(z),
                None => Decision::No,
            };
            return Ok(decision(out, d, |o, z| o.kv("witness", fmt_w(&z))));
        }
        Command::Twisted { x, y, power } => {
            let (x, y) = (word(&pres, &x)?, word(&pres, &y)?);
            let psi = pres.phi().power(power);
            let d = twisted_conjugator(&x, &y, &psi, budget);
            return Ok(decision(out, d, |o, z| o.kv("witness", fmt_w(&z))));
        }
        Command::Brinkmann { x, y } => {
            let (x, y) = (word(&pres, &x)?, word(&pres, &y)?);
            let d = brinkmann_cp(&x, &y, pres.phi(), budget.kmax);
            return Ok(decision(out, d, |o, k| o.kv("k", k.to_string())));
        }
        Command::Ea { x, a } => {
            if a == 0 {
                bail!("the exponent a must be non-zero");
            }
            let x = word(&pres, &x)?;
            let st = compute_ea(&x, pres.phi(), a, budget);
            let e = st.e_a.expect("e_a always exists for a != 0");
            out.kv("e_a", e.to_string());
            if let Some(w) = &st.witness {
                out.kv("witness", fmt_w(&w.z));
            }
            for d in &st.unresolved_divisors {
                out.kv("unresolved", d.to_string());
            }
            out.kv("status", if st.is_exact() { "exact" } else { "budget-limited" });
        }
        Command::Centralizer { element: e, automaton } => {
            let g = element(&pres, &e)?;
            let c = centralize(&pres, &g, budget);
            for h in &c.generators {
                out.value("gen", fmt_el(h));
            }
            out.kv("status", c.status.label());
            if let fbc_core::Status::BudgetLimited(notes) = &c.status {
                for n in notes {
                    out.kv("note", n);
                }
            }
            if let Some(path) = automaton {
                let nfa = build_centralizer_nfa(&pres, &c)?;
                fs::write(&path, nfa.to_text(pres.alphabet()))
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
        }
        Command::Conjugators { g, h } => {
            let (g, h) = (element(&pres, &g)?, element(&pres, &h)?);
            let d = conjugators(&pres, &g, &h, budget);
            return Ok(decision(out, d, |o, s| {
                o.kv("witness", fmt_el(&s.witness));
                for c in &s.centralizer.generators {
                    o.kv("gen", fmt_el(c));
                }
                o.kv("status", s.centralizer.status.label());
            }));
        }
        Command::CfCheck { g, h, grammar } => {
            let (g, h) = (element(&pres, &g)?, element(&pres, &h)?);
            let text = fs::read_to_string(&grammar).with_context(|| format!("cannot read {}", grammar.display()))?;
            let cfg = Cfg::parse(pres.alphabet(), &text).with_context(|| format!("{}", grammar.display()))?;
            out.kv("note", DISCLAIMER);
            let d = constrained_conjugacy(&pres, &g, &h, &cfg, budget)?;
            return Ok(decision(out, d, |o, w| o.kv("witness", fmt_el(&w))));
        }
        Command::Oracle { query } => oracle_query(&pres, budget, query, out)?,
    }
    Ok(Outcome::Decided)
}

fn oracle_query(pres: &GroupPresentation, budget: Budget, q: OracleQuery, out: &mut Out) -> Result<()> {
    match q {
        OracleQuery::Ball { max_t, max_len } => {
            let b = oracle::ball_with_cap(pres, max_t, max_len, DEFAULT_CAP)?;
            out.kv("count", b.elements.len().to_string());
            for g in &b.elements {
                out.value("element", pres.format_element(g));
            }
        }
        OracleQuery::Centralizer { element: e, max_t, max_len } => {
            let g = element(pres, &e)?;
            let v = oracle::brute_centralizer(pres, &g, max_t, max_len)?;
            out.kv("count", v.len().to_string());
            for h in &v {
                out.value("element", pres.format_element(h));
            }
        }
        OracleQuery::Twisted { x, power, max_len } => {
            let x = word(pres, &x)?;
            let v = oracle::brute_twisted_class(&x, &pres.phi().power(power), max_len)?;
            out.kv("count", v.len().to_string());
            for w in &v {
                out.value("word", pres.alphabet().format_word(w));
            }
        }
        OracleQuery::Ea { x, a, max_len } => {
            let x = word(pres, &x)?;
            let v = oracle::brute_ea(&x, pres.phi(), a, budget.kmax, max_len)?;
            out.kv("count", v.len().to_string());
            for k in &v {
                out.value("k", k.to_string());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut out = Out {
        porcelain: cli.porcelain,
        lines: Vec::new(),
    };
    match run(cli, &mut out) {
        Ok(outcome) => {
            for l in &out.lines {
                println!("{l}");
            }
            match outcome {
                Outcome::Decided => ExitCode::SUCCESS,
                Outcome::Unknown => ExitCode::from(2),
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
