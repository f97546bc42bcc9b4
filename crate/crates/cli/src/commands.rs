use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use binmat::constructions::{affine_geometry, c5t, tripod, verify_tripod_lemma};
use binmat::format::{emit_coloring, emit_matroid, parse_matroid};
use binmat::fourier::{is_epsilon_uniform, sumset3_support, CountingBound};
use binmat::gf2::flat_points;
use binmat::matroid::{find_i1t_witness, is_triangle_free, largest_flat_in};
use binmat::pipeline::{chi_bound_pipeline, PipelineConfig, Strategy};
use binmat::ramsey::{bose_burton_check, bose_burton_exhaustive, gr_search, Pruning};
use binmat::rational::parse_rational;
use binmat::regularity::{default_max_codim, key_lemma_witness, refine_to_regular, RegularityReport};
use binmat::report::{inputs_digest, RunReport};
use binmat::{Error, Matroid, PointSet, Subspace};

use crate::{Command, GenCommand, GlobalOpts, RamseyCommand, StrategyArg, VerifyCommand};

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => e.exit_code(),
            CliError::Io(..) | CliError::Usage(_) => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_input(path: &Path) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| CliError::Io(path.to_path_buf(), e))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
    }
}

struct Ctx<'a> {
    opts: &'a GlobalOpts,
    args: String,
    inputs: Vec<Vec<u8>>,
}

impl Ctx<'_> {
    fn load(&mut self, path: &Path) -> CliResult<Matroid> {
        let text = read_input(path)?;
        self.inputs.push(text.clone().into_bytes());
        Ok(parse_matroid(&text).map_err(Error::from)?)
    }

    fn report(&self, command: &str) -> RunReport {
        let mut parts: Vec<&[u8]> = vec![self.args.as_bytes()];
        parts.extend(self.inputs.iter().map(|v| v.as_slice()));
        RunReport::new(command, inputs_digest(parts))
    }
}

fn basis(s: &Subspace) -> Value {
    json!(s.basis())
}

fn regularity_json(r: &RegularityReport) -> Value {
    json!({
        "subspace_basis": basis(&r.subspace),
        "codim": r.codim,
        "epsilon": r.epsilon.to_string(),
        "cosets": r.coset_verdicts.len(),
        "bad_cosets": r.bad_set,
        "sparse_cosets": r.sparse_set,
        "regular": r.regular,
        "energy": r.energy.to_string(),
    })
}

/// Arguments that determine the output, for the input digest. Output
/// format, thread count and timing are excluded.
fn canonical_args(cmd: &Command, opts: &GlobalOpts) -> String {
    format!("{cmd:?} seed={} budget={:?}", opts.seed, opts.budget)
}

pub fn run(opts: &GlobalOpts, cmd: &Command) -> CliResult<String> {
    let start = Instant::now();
    let mut ctx = Ctx {
        opts,
        args: canonical_args(cmd, opts),
        inputs: Vec::new(),
    };
    let budget = opts.search_budget();
    let mut report = match cmd {
        Command::Gen(g) => {
            let (name, m) = match g {
                GenCommand::Tripod { k } => ("gen tripod", tripod(*k)?.matroid),
                GenCommand::C5t { t } => ("gen c5t", c5t(*t)?),
                GenCommand::Ag { n } => ("gen ag", affine_geometry(*n)?),
            };
            let text = emit_matroid(&m);
            if !opts.json {
                return Ok(text);
            }
            let mut r = ctx.report(name);
            r.insert("dim", m.dim());
            r.insert("size", m.len());
            r.insert("file", text);
            r
        }
        Command::Chi { file } => {
            let m = ctx.load(file)?;
            let flat = largest_flat_in(&m.complement(), budget)?;
            if !flat_points(&flat).is_disjoint(m.ground()) {
                return Err(Error::InternalConsistency("witness flat meets E".into()).into());
            }
            let mut r = ctx.report("chi");
            r.insert("dim", m.dim());
            r.insert("size", m.len());
            r.insert("chi", m.dim() - flat.dim());
            r.insert("witness_flat_dim", flat.dim());
            r.insert("witness_flat_basis", basis(&flat));
            r
        }
        Command::Check {
            triangle_free,
            i1t,
            file,
        } => {
            let m = ctx.load(file)?;
            let mut r = ctx.report("check");
            r.insert("dim", m.dim());
            r.insert("size", m.len());
            if *triangle_free || i1t.is_none() {
                r.insert("triangle_free", is_triangle_free(&m));
            }
            if let Some(t) = i1t {
                let w = find_i1t_witness(&m, *t, budget)?;
                r.insert("t", t);
                r.insert("i1t_free", w.is_none());
                if let Some(w) = w {
                    let point = flat_points(&w).intersection(m.ground()).to_vec();
                    r.insert("i1t_witness_basis", basis(&w));
                    r.insert("i1t_witness_point", point);
                }
            }
            r
        }
        Command::Omega { file } => {
            let m = ctx.load(file)?;
            let flat = largest_flat_in(&m, budget)?;
            let mut r = ctx.report("omega");
            r.insert("dim", m.dim());
            r.insert("omega", flat.dim());
            r.insert("flat_basis", basis(&flat));
            r
        }
        Command::Sumset3 { file } => {
            let m = ctx.load(file)?;
            let support = sumset3_support(m.ground())?;
            let mut r = ctx.report("sumset3");
            r.insert("dim", m.dim());
            r.insert("size", m.len());
            r.insert("sumset_size", support.len());
            r.insert("sumset", support.to_vec());
            r.insert("meets_ground", !support.is_disjoint(m.ground()));
            r
        }
        Command::Uniform { eps, file } => {
            let eps = parse_rational(eps)?;
            let m = ctx.load(file)?;
            let v = is_epsilon_uniform(m.ground(), eps);
            let mut r = ctx.report("uniform");
            r.insert("epsilon", eps.to_string());
            r.insert("uniform", v.uniform);
            r.insert("worst_character", v.worst_character);
            r.insert("worst_imbalance", v.worst_imbalance);
            r
        }
        Command::Regularize {
            eps,
            max_codim,
            file,
        } => {
            let eps = parse_rational(eps)?;
            let m = ctx.load(file)?;
            let d = max_codim.unwrap_or_else(|| default_max_codim(m.dim()));
            let refinement = refine_to_regular(m.ground(), eps, d)?;
            let mut r = ctx.report("regularize");
            r.insert("regularity", regularity_json(&refinement.report));
            r.insert(
                "energies",
                refinement.energies.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            );
            r.insert("characters", &refinement.characters);
            r
        }
        Command::Keylemma {
            alpha,
            max_codim,
            file,
        } => {
            let alpha = parse_rational(alpha)?;
            let m = ctx.load(file)?;
            let d = max_codim.unwrap_or_else(|| default_max_codim(m.dim()));
            let w = key_lemma_witness(m.ground(), alpha, d)?;
            let mut r = ctx.report("keylemma");
            r.insert("alpha", alpha.to_string());
            r.insert("epsilon_used", w.epsilon_used.to_string());
            r.insert("verified", w.verified);
            r.insert("linear", w.is_linear());
            r.insert("codim", w.codim());
            r.insert("good_coset", w.good_coset);
            r.insert("good_coset_index", w.good_coset_index);
            r.insert("flat_basis", basis(w.flat.space()));
            r.insert("regularity", regularity_json(&w.report));
            if !w.verified {
                return Err(Error::InternalConsistency(
                    "key lemma coset is not contained in the sumset".into(),
                )
                .into());
            }
            r
        }
        Command::Verify(v) => verify(&mut ctx, v)?,
        Command::Pipeline {
            t,
            strategy,
            k_cap,
            gr,
            max_codim,
            file,
        } => {
            let m = ctx.load(file)?;
            let config = PipelineConfig {
                budget,
                strategy: match strategy {
                    StrategyArg::Exhaustive => Strategy::ExhaustiveSearch,
                    StrategyArg::Regularity => Strategy::Regularity,
                },
                k_cap: k_cap.unwrap_or(PipelineConfig::default().k_cap),
                gr_value: *gr,
                max_codim: *max_codim,
            };
            let w = chi_bound_pipeline(&m, *t, &config)?;
            let mut r = ctx.report("pipeline");
            r.insert("t", t);
            r.insert("dim", m.dim());
            r.insert("chi_bound", w.chi_bound);
            r.insert("witness_flat_basis", basis(&w.flat));
            r.insert("witness_disjoint", true);
            r.insert("trace", &w.trace);
            r
        }
        Command::Ramsey(RamseyCommand::Gr {
            c,
            r: rr,
            n_max,
            certificates,
            no_pruning,
        }) => {
            let pruning = if *no_pruning {
                Pruning::None
            } else {
                Pruning::ColorSymmetry
            };
            let g = gr_search(*c, *rr, *n_max, pruning, budget)?;
            let certs: Vec<String> = g.certificates.iter().map(emit_coloring).collect();
            if let Some(dir) = certificates {
                std::fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.clone(), e))?;
                for (i, text) in certs.iter().enumerate() {
                    let path = dir.join(format!("gr_c{c}_r{rr}_n{}.txt", i + 1));
                    std::fs::write(&path, text).map_err(|e| CliError::Io(path.clone(), e))?;
                }
            }
            let mut r = ctx.report("ramsey gr");
            r.insert("colors", c);
            r.insert("r", rr);
            r.insert("n_max", n_max);
            r.insert("pruning", pruning);
            r.insert("gr", g.n);
            r.insert("nodes", g.nodes);
            r.insert("certificates", certs);
            r
        }
    };
    if opts.timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(report.emit(opts.format()))
}

/// A random subset of F₂ⁿ with each vector included with probability
/// `num / 8`.
fn random_set(rng: &mut ChaCha8Rng, n: usize, num: u32) -> PointSet {
    PointSet::from_points(n, (0..1 << n).filter(|_| rng.gen_range(0..8) < num))
}

fn verify(ctx: &mut Ctx<'_>, v: &VerifyCommand) -> CliResult<RunReport> {
    let budget = ctx.opts.search_budget();
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.opts.seed);
    Ok(match v {
        VerifyCommand::TripodLemma { k } => {
            let rec = verify_tripod_lemma(*k)?;
            let mut r = ctx.report("verify tripod-lemma");
            r.insert("k", k);
            r.insert("dim", rec.dim);
            r.insert("ground_size", rec.ground_size);
            r.insert("f_flat_dim", rec.f_flat_dim);
            r.insert("bullets", &rec.bullets);
            r.insert("all_passed", rec.bullets.iter().all(|b| b.passed));
            r
        }
        VerifyCommand::Counting { trials, n, eps } => {
            let eps = parse_rational(eps)?;
            let mut checked = 0usize;
            let mut attempts = 0usize;
            let mut points_checked = 0u64;
            while checked < *trials {
                attempts += 1;
                if attempts > 100 * trials.max(&1) {
                    return Err(CliError::Usage(format!(
                        "could not sample {trials} {eps}-uniform sets in dimension {n}"
                    )));
                }
                let density = rng.gen_range(2..=6);
                let x = random_set(&mut rng, *n, density);
                if !is_epsilon_uniform(&x, eps).uniform {
                    continue;
                }
                let bound = CountingBound::new(&x, eps)?;
                if let Some(u) = bound.first_violation() {
                    return Err(Error::InternalConsistency(format!(
                        "triple count at {u} is below the uniform lower bound"
                    ))
                    .into());
                }
                points_checked += 1 << n;
                checked += 1;
            }
            let mut r = ctx.report("verify counting");
            r.insert("n", n);
            r.insert("epsilon", eps.to_string());
            r.insert("trials", checked);
            r.insert("samples_drawn", attempts);
            r.insert("points_checked", points_checked);
            r.insert("all_passed", true);
            r
        }
        VerifyCommand::BoseBurton {
            n,
            t,
            exhaustive,
            trials,
        } => {
            let mut r = ctx.report("verify bose-burton");
            r.insert("n", n);
            if *exhaustive {
                let sweep = bose_burton_exhaustive(*n, budget)?;
                r.insert("mode", "exhaustive");
                r.insert("subsets", sweep.subsets);
                r.insert("max_flat_free", &sweep.max_flat_free);
                r.insert("bounds", &sweep.bounds);
                r.insert("t", t);
                r.insert("max_flat_free_at_t", sweep.max_flat_free.get(*t));
            } else {
                let mut flat_free = 0usize;
                let mut largest = 0usize;
                for _ in 0..*trials {
                    let density = rng.gen_range(1..=7);
                    let mut x = random_set(&mut rng, *n, density);
                    x.remove(0);
                    let m = Matroid::new(*n, x)?;
                    let v = bose_burton_check(&m, *t, budget)?;
                    if v.flat.is_none() {
                        flat_free += 1;
                        largest = largest.max(v.size);
                    }
                }
                r.insert("mode", "random");
                r.insert("t", t);
                r.insert("trials", trials);
                r.insert("flat_free_samples", flat_free);
                r.insert("largest_flat_free", largest);
                r.insert("bound", binmat::ramsey::bose_burton_bound(*n, *t));
            }
            r.insert("all_passed", true);
            r
        }
    })
}
