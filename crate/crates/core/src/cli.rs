//! The `mscheme` command line. [`run`] returns the exit code and both output
//! streams so the binary stays a thin wrapper and tests need no subprocess.
//!
//! Exit codes: 0 success or valid, 1 semantic failure, 2 input error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::axioms::set_name;
use crate::constructions::{
    dowling_poset, linear_matroid, quotient_scheme, scheme_from_matroid, uniform_matroid, DEFAULT_VERTEX_CAP,
};
use crate::geometric::{scheme_from_geometric, validate_geometric_with_cap, GeometricPoset, DEFAULT_ATOM_CAP};
use crate::io::{
    read_json, to_dot, to_json, ActionFile, ArrangementFile, GroupFile, InputError, LinearFile, SchemeFile,
    SemimatroidFile,
};
use crate::poset::RankedPoset;
use crate::scheme::{find_scheme_isomorphism, MatroidScheme};
use crate::toric::layers_poset;
use crate::tutte::{charpoly_identity, tutte_delcon_with_priority, tutte_direct};

/// Environment variable naming the directory that `fixtures/…` paths resolve to.
pub const FIXTURES_ENV: &str = "MSCHEME_FIXTURES";

#[derive(Debug, Parser)]
#[command(name = "mscheme", version, about = "Matroid schemes, geometric posets and their polynomials")]
pub struct Cli {
    /// Seed for the deletion-contraction pivot order.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Bound on the number of atoms for the G2 sweep.
    #[arg(long, global = true, default_value_t = DEFAULT_ATOM_CAP)]
    pub cap_atoms: usize,
    /// Write the resulting file here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Scheme,
    Geometric,
    Semimatroid,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a file; prints the first violated axiom with its witness.
    Check { kind: CheckKind, path: PathBuf },
    /// Rank, counts, loops, isthmuses, Tutte and characteristic polynomials.
    Invariants { path: PathBuf },
    /// Delete, contract, restrict or simplify a scheme.
    Transform {
        #[command(subcommand)]
        op: TransformOp,
    },
    /// Build a scheme from auxiliary data.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Render the Hasse diagram, with nodes labelled `id : rho`.
    Export {
        #[command(subcommand)]
        format: ExportFormat,
    },
    /// Exit 0 with a bijection if the two schemes are isomorphic, else 1.
    Iso { first: PathBuf, second: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum TransformOp {
    Delete {
        path: PathBuf,
        #[arg(long)]
        atom: String,
    },
    Contract {
        path: PathBuf,
        #[arg(long)]
        element: String,
    },
    Restrict {
        path: PathBuf,
        /// Atom ids as separate values, since ids may contain commas.
        #[arg(long, num_args = 0..)]
        atoms: Vec<String>,
    },
    Simplify { path: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum ConstructKind {
    /// `U_{r,n}`.
    Uniform { r: usize, n: usize },
    /// Column matroid of an integer matrix file.
    Linear { path: PathBuf },
    Dowling {
        #[arg(short = 'n')]
        n: usize,
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        action: PathBuf,
        /// Also write the certified poset.
        #[arg(long)]
        poset: Option<PathBuf>,
    },
    /// Quotient of a semimatroid by a group action on its vertices.
    Quotient {
        path: PathBuf,
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        action: PathBuf,
    },
    /// Scheme of the poset of layers of a toric arrangement.
    Toric {
        path: PathBuf,
        /// Also write the certified poset of layers.
        #[arg(long)]
        poset: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExportFormat {
    Dot { path: PathBuf },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Semantic(String),
    Input(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.to_string())
    }
}

type Res = Result<(), Failure>;

struct Ctx<'a> {
    cli: &'a Cli,
    fixtures: Option<PathBuf>,
    out: String,
    err: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_fixtures(args, std::env::var_os(FIXTURES_ENV).map(PathBuf::from))
}

/// As [`run`], with the fixture override given explicitly.
pub fn run_with_fixtures<I, T>(args: I, fixtures: Option<PathBuf>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut ctx = Ctx {
        cli: &cli,
        fixtures,
        out: String::new(),
        err: String::new(),
    };
    let code = match ctx.dispatch() {
        Ok(()) => 0,
        Err(Failure::Semantic(msg)) => {
            let _ = writeln!(ctx.err, "{msg}");
            1
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            2
        }
    };
    Outcome {
        code,
        stdout: ctx.out,
        stderr: ctx.err,
    }
}

impl Ctx<'_> {
    fn resolve(&self, path: &Path) -> PathBuf {
        if let (Some(dir), Ok(rest)) = (&self.fixtures, path.strip_prefix("fixtures")) {
            return dir.join(rest);
        }
        path.to_path_buf()
    }

    fn load_file(&self, path: &Path) -> Result<SchemeFile, Failure> {
        Ok(read_json(&self.resolve(path))?)
    }

    fn load_scheme(&self, path: &Path) -> Result<MatroidScheme, Failure> {
        self.load_file(path)?
            .scheme()?
            .map_err(|e| Failure::Semantic(format!("invalid matroid scheme: {e}")))
    }

    fn load_action(&mut self, path: &Path) -> Result<ActionFile, Failure> {
        let a: ActionFile = read_json(&self.resolve(path))?;
        if a.cofinite.is_some() {
            self.err.push_str("warning: `cofinite` is ignored; finite actions are always cofinite\n");
        }
        Ok(a)
    }

    fn say(&mut self, line: impl AsRef<str>) {
        self.out.push_str(line.as_ref());
        self.out.push('\n');
    }

    /// Writes `text` to `--out`, or to standard output; the summary goes to
    /// standard output in the first case and standard error in the second.
    fn emit(&mut self, text: &str, summary: &str) -> Res {
        match &self.cli.out {
            Some(p) => {
                fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
                self.say(summary);
                self.say(format!("wrote {}", p.display()));
            }
            None => {
                self.out.push_str(text);
                self.err.push_str(summary);
                self.err.push('\n');
            }
        }
        Ok(())
    }

    fn emit_scheme(&mut self, m: &MatroidScheme, extra: &str) -> Res {
        let mut summary = format!("{} elements, rank {}", m.len(), m.rank());
        if !extra.is_empty() {
            summary = format!("{extra}\n{summary}");
        }
        self.emit(&to_json(&SchemeFile::from_scheme(m)), &summary)
    }

    fn dispatch(&mut self) -> Res {
        match &self.cli.command {
            Command::Check { kind, path } => self.check(*kind, path),
            Command::Invariants { path } => self.invariants(path),
            Command::Transform { op } => self.transform(op),
            Command::Construct { kind } => self.construct(kind),
            Command::Export {
                format: ExportFormat::Dot { path },
            } => self.export_dot(path),
            Command::Iso { first, second } => self.iso(first, second),
        }
    }

    fn check(&mut self, kind: CheckKind, path: &Path) -> Res {
        match kind {
            CheckKind::Scheme => {
                let m = self.load_scheme(path)?;
                self.say(format!("valid matroid scheme: {} elements, rank {}", m.len(), m.rank()));
            }
            CheckKind::Geometric => {
                let poset = self
                    .load_file(path)?
                    .poset()?
                    .map_err(|e| Failure::Semantic(format!("not geometric: {e}")))?;
                let rp = RankedPoset::new(poset).map_err(|e| Failure::Semantic(format!("not geometric: {e}")))?;
                let gp = self.certify(rp)?;
                self.say(format!(
                    "geometric poset: {} elements, {} atoms",
                    gp.len(),
                    gp.ranked().atoms().len()
                ));
            }
            CheckKind::Semimatroid => {
                let f: SemimatroidFile = read_json(&self.resolve(path))?;
                let sm = f
                    .semimatroid(DEFAULT_VERTEX_CAP)?
                    .map_err(|e| Failure::Semantic(format!("invalid semimatroid: {e}")))?;
                self.say(format!(
                    "valid semimatroid: {} vertices, {} faces",
                    sm.vertices().len(),
                    sm.faces().len()
                ));
            }
        }
        Ok(())
    }

    fn certify(&self, rp: RankedPoset) -> Result<GeometricPoset, Failure> {
        use crate::geometric::GeometricError;
        validate_geometric_with_cap(rp, self.cli.cap_atoms).map_err(|e| match e {
            GeometricError::AtomCap { .. } => Failure::Input(format!("{e}; raise --cap-atoms")),
            e => Failure::Semantic(format!("not geometric: {e}")),
        })
    }

    fn invariants(&mut self, path: &Path) -> Res {
        let m = self.load_scheme(path)?;
        let names = |xs: Vec<usize>| set_name(&m.names(&xs));
        self.say(format!("rank: {}", m.rank()));
        self.say(format!("elements: {}", m.len()));
        self.say(format!("flats: {}", m.flat_elements().len()));
        self.say(format!("bases: {}", m.bases().len()));
        self.say(format!("circuits: {}", m.circuits().len()));
        self.say(format!("loops: {}", names(m.loops())));
        self.say(format!("isthmuses: {}", names(m.isthmuses())));
        self.say(format!("simple: {}", m.is_simple()));
        let direct = tutte_direct(&m);
        self.say(format!("tutte: {direct}"));
        match charpoly_identity(&m) {
            Ok(chi) => self.say(format!("characteristic: {chi}")),
            Err(_) => self.say("characteristic: undefined (scheme has loops)"),
        }
        // the seed only picks the pivot order
        let mut order: Vec<usize> = (0..m.len()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(self.cli.seed));
        let delcon = tutte_delcon_with_priority(&m, &order)
            .map_err(|e| Failure::Semantic(format!("deletion-contraction failed: {e}")))?;
        if direct != delcon {
            return Err(Failure::Semantic(format!(
                "Tutte polynomials disagree: direct {direct}, deletion-contraction {delcon}"
            )));
        }
        Ok(())
    }

    fn transform(&mut self, op: &TransformOp) -> Res {
        let unknown = |e: crate::poset::PosetError| Failure::Semantic(e.to_string());
        let (m, what) = match op {
            TransformOp::Delete { path, atom } => {
                let m = self.load_scheme(path)?;
                let a = m.require(atom).map_err(unknown)?;
                (m.delete(a).map_err(|e| Failure::Semantic(e.to_string()))?, format!("deleted {atom}"))
            }
            TransformOp::Contract { path, element } => {
                let m = self.load_scheme(path)?;
                let x = m.require(element).map_err(unknown)?;
                (m.contract(x).map_err(|e| Failure::Semantic(e.to_string()))?, format!("contracted {element}"))
            }
            TransformOp::Restrict { path, atoms } => {
                let m = self.load_scheme(path)?;
                let idx = atoms
                    .iter()
                    .filter(|a| !a.is_empty())
                    .map(|a| m.require(a))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(unknown)?;
                let r = m.restrict(&idx).map_err(|e| Failure::Semantic(e.to_string()))?;
                (r, format!("restricted to {}", set_name(atoms)))
            }
            TransformOp::Simplify { path } => {
                let m = self.load_scheme(path)?;
                let gp = self.certify(m.flats())?;
                (scheme_from_geometric(&gp), "simplified".to_string())
            }
        };
        self.emit_scheme(&m, &what)
    }

    fn construct(&mut self, kind: &ConstructKind) -> Res {
        let sem = |e: &dyn std::fmt::Display| Failure::Semantic(format!("construction failed: {e}"));
        match kind {
            ConstructKind::Uniform { r, n } => {
                let m = uniform_matroid(*r, *n).map_err(|e| sem(&e))?;
                self.emit_scheme(&scheme_from_matroid(&m), &format!("U_{{{r},{n}}}"))
            }
            ConstructKind::Linear { path } => {
                let f: LinearFile = read_json(&self.resolve(path))?;
                let m = linear_matroid(f.names(), &f.columns).map_err(|e| sem(&e))?;
                self.emit_scheme(&scheme_from_matroid(&m), "linear matroid")
            }
            ConstructKind::Dowling { n, group, action, poset } => {
                let g: GroupFile = read_json(&self.resolve(group))?;
                let g = g.group()?.map_err(|e| sem(&e))?;
                let act = self.load_action(action)?.action(g)?.map_err(|e| sem(&e))?;
                let (gp, m) = dowling_poset(*n, &act).map_err(|e| sem(&e))?;
                self.write_poset(poset.as_deref(), &gp)?;
                self.emit_scheme(&m, &certificate(&gp))
            }
            ConstructKind::Quotient { path, group, action } => {
                let f: SemimatroidFile = read_json(&self.resolve(path))?;
                let sm = f.semimatroid(DEFAULT_VERTEX_CAP)?.map_err(|e| sem(&e))?;
                let g: GroupFile = read_json(&self.resolve(group))?;
                let g = g.group()?.map_err(|e| sem(&e))?;
                let act = self.load_action(action)?.action(g)?.map_err(|e| sem(&e))?;
                let q = quotient_scheme(&sm, &act).map_err(|e| sem(&e))?;
                let note = format!("orbit Tutte polynomial: {}", q.action_tutte);
                self.emit_scheme(&q.scheme, &note)
            }
            ConstructKind::Toric { path, poset } => {
                let f: ArrangementFile = read_json(&self.resolve(path))?;
                let arr = f.arrangement()?.map_err(|e| sem(&e))?;
                let lp = layers_poset(&arr).map_err(|e| sem(&e))?;
                self.write_poset(poset.as_deref(), &lp.poset)?;
                self.emit_scheme(&lp.scheme, &certificate(&lp.poset))
            }
        }
    }

    fn write_poset(&self, path: Option<&Path>, gp: &GeometricPoset) -> Res {
        if let Some(p) = path {
            let f = SchemeFile::from_poset(gp.poset(), Some(gp.ranked().ranks()));
            fs::write(p, to_json(&f)).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
        }
        Ok(())
    }

    fn export_dot(&mut self, path: &Path) -> Res {
        let f = self.load_file(path)?;
        let poset = f.poset()?.map_err(|e| Failure::Semantic(e.to_string()))?;
        let rp = RankedPoset::new(poset).map_err(|e| Failure::Semantic(e.to_string()))?;
        let rho = f.rhos().unwrap_or_else(|_| rp.ranks().to_vec());
        let summary = format!("{} nodes, {} edges", rp.len(), rp.poset().cover_count());
        self.emit(&to_dot(&rp, &rho), &summary)
    }

    fn iso(&mut self, first: &Path, second: &Path) -> Res {
        let m1 = self.load_scheme(first)?;
        let m2 = self.load_scheme(second)?;
        match find_scheme_isomorphism(&m1, &m2) {
            Some(phi) => {
                self.say("isomorphic");
                for (x, &y) in phi.iter().enumerate() {
                    self.say(format!("{} -> {}", m1.id(x), m2.id(y)));
                }
                Ok(())
            }
            None => Err(Failure::Semantic("not isomorphic".into())),
        }
    }
}

fn certificate(gp: &GeometricPoset) -> String {
    let rank = gp.ranked().ranks().iter().copied().max().unwrap_or(0);
    format!(
        "geometric poset: {} elements, {} atoms, rank {rank}; G1 and G2 hold",
        gp.len(),
        gp.ranked().atoms().len()
    )
}
