//! `polyfree`: command-line front end for the graded Lie algebra toolkit.
//!
//! Every report is a JSON object carrying `"schema_version": 1`. Exit status
//! is 0 when the requested check passes, 1 when it fails, 2 on usage errors.

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use polyfree_core::algebra::{braid_names, monomial_delta_names};
use polyfree_core::arrangements::{
    incidence_sets, induced_generator_images, monomial_root_map, rational_form, slf_check, AffineForm, FormField,
    RootMapInput,
};
use polyfree_core::groups::{poison_p_alpha, verify_mccool_relations, PoisonElement, POISON_A, POISON_PHI};
use polyfree_core::invariants::{adkernel_report, center_profile, centralizer_profile};
use polyfree_core::maps::{algebras_equal, poison_j_map, poison_p_alpha_map, pullback_algebra, pullback_dictionary};
use polyfree_core::{AlgebraSpec, LieError, LieMap};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "polyfree", version, about = "Centralizers, centers and fiber-type checks for layered graded Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Algebra family.
    #[arg(long, global = true, value_enum)]
    algebra: Option<FamilyArg>,

    #[arg(long, global = true)]
    n: Option<usize>,

    #[arg(long, global = true)]
    r: Option<usize>,

    /// Size of the cyclic label set of the surface family.
    #[arg(long, global = true)]
    labels: Option<usize>,

    /// Highest weight examined (3 unless stated otherwise).
    #[arg(long, global = true)]
    max_weight: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Mccool,
    Dk,
    Monomial,
    Surface,
    Poison,
    Free,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapArg {
    Identity,
    Induced,
    PoisonJ,
    PoisonPxa,
}

#[derive(Subcommand)]
enum Command {
    /// Graded dimensions, total and per layer.
    Dims,
    /// The algebra definition and its Lyndon basis by weight.
    Basis,
    /// Bracket of two elements, e.g. `--x 'B[1,2]' --y '[B[1,3],B[2,3]]'`.
    Bracket {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Centralizer lattices of a generator set (default: the top layer).
    Centralizer {
        #[arg(long = "gen")]
        gens: Vec<String>,
    },
    /// Center lattices by weight.
    Center,
    /// Compare the center with the centralizer of an ideal (default: the top layer).
    Adkernel {
        #[arg(long = "ideal")]
        ideal: Vec<String>,
    },
    /// Antisymmetry and Jacobi on basis elements.
    Jacobi,
    /// Check that a generator map is a Lie homomorphism and injective by weight.
    MapVerify {
        #[arg(long, value_enum)]
        map: MapArg,
        /// Also fail when some weight is not injective.
        #[arg(long)]
        require_injective: bool,
    },
    /// Compare the pullback algebra with monomial_orbit(r, n+1) (default weight 4).
    PullbackCompare,
    /// Incidence sets of the monomial arrangement in the braid arrangement.
    ArrPartition,
    /// Induced generator images and the image of Delta.
    ArrImages,
    /// Strictly linear fibration check of a root map.
    SlfCheck {
        #[arg(long)]
        counterexample: bool,
    },
    /// McCool relations in Aut(F_n).
    MccoolRelations,
    /// Kernel witness of p x alpha on the poison group.
    PoisonCheck,
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<LieError> for Failure {
    fn from(e: LieError) -> Self {
        match e {
            LieError::InvalidParameter(_)
            | LieError::UnknownGenerator(_)
            | LieError::Parse(_)
            | LieError::NotLyndon(..)
            | LieError::DuplicateGenerator(_) => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

type Outcome = Result<(Value, bool), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

impl Cli {
    fn weight(&self) -> usize {
        self.max_weight.unwrap_or(3)
    }

    fn need_n(&self) -> Result<usize, Failure> {
        self.n.ok_or_else(|| usage("this command needs --n"))
    }

    fn need_rn(&self) -> Result<(usize, usize), Failure> {
        match (self.r, self.n) {
            (Some(r), Some(n)) => Ok((r, n)),
            _ => Err(usage("this command needs --r and --n")),
        }
    }

    fn spec(&self) -> Result<AlgebraSpec, Failure> {
        let family = self.algebra.ok_or_else(|| usage("this command needs --algebra"))?;
        let name = match family {
            FamilyArg::Mccool => "mccool",
            FamilyArg::Dk => "dk",
            FamilyArg::Monomial => "monomial",
            FamilyArg::Surface => "surface",
            FamilyArg::Poison => "poison",
            FamilyArg::Free => "free",
        };
        Ok(AlgebraSpec::by_name(name, self.n, self.r, self.labels)?)
    }
}

fn top_layer(spec: &AlgebraSpec) -> Vec<String> {
    spec.layer_generators(spec.top_layer()).to_vec()
}

fn dims(cli: &Cli) -> Result<String, Failure> {
    let spec = cli.spec()?;
    let rows: Vec<(usize, u128, Vec<u128>)> = (1..=cli.weight())
        .map(|w| Ok((w, spec.weight_dimension(w)?, spec.layer_dimensions(w)?)))
        .collect::<Result<_, LieError>>()?;
    if cli.format == Format::Csv {
        let mut out = String::from("weight,total");
        for l in 0..spec.num_layers() {
            out.push_str(&format!(",layer_{l}"));
        }
        out.push('\n');
        for (w, total, per) in rows {
            out.push_str(&format!("{w},{total}"));
            for d in per {
                out.push_str(&format!(",{d}"));
            }
            out.push('\n');
        }
        return Ok(out);
    }
    let dims: Vec<Value> = rows
        .into_iter()
        .map(|(w, total, per)| json!({ "w": w, "total": big(total), "by_layer": per.into_iter().map(big).collect::<Vec<_>>() }))
        .collect();
    let ranks: Vec<usize> = (0..spec.num_layers()).map(|l| spec.layer_rank(l)).collect();
    Ok(render(&json!({ "algebra": spec.family().to_string(), "layer_ranks": ranks, "dims": dims })))
}

fn big(d: u128) -> Value {
    u64::try_from(d).map_or_else(|_| Value::String(d.to_string()), Value::from)
}

fn basis(cli: &Cli) -> Outcome {
    let spec = cli.spec()?;
    let weights: Vec<Value> = (1..=cli.weight())
        .map(|w| json!({ "w": w, "basis": spec.weight_basis(w).iter().map(|k| spec.key_name(k)).collect::<Vec<_>>() }))
        .collect();
    Ok((json!({ "definition": strip_version(spec.to_json()), "weights": weights }), true))
}

fn bracket(cli: &Cli, x: &str, y: &str) -> Outcome {
    let spec = cli.spec()?;
    let t = cli.weight();
    let a = spec.parse_element(x, t)?;
    let b = spec.parse_element(y, t)?;
    let c = spec.bracket(&a, &b, t)?;
    let terms: Vec<Value> = c.terms().iter().map(|(k, v)| json!([v.to_string(), spec.key_name(k)])).collect();
    Ok((
        json!({
            "algebra": spec.family().to_string(),
            "truncation": t,
            "x": spec.format_element(&a),
            "y": spec.format_element(&b),
            "result": spec.format_element(&c),
            "terms": terms,
        }),
        true,
    ))
}

fn centralizer(cli: &Cli, gens: &[String]) -> Outcome {
    let spec = cli.spec()?;
    let gens = if gens.is_empty() { top_layer(&spec) } else { gens.to_vec() };
    let p = centralizer_profile(&spec, &gens, cli.weight())?;
    Ok((strip_version(p.to_json(&spec)), true))
}

fn center(cli: &Cli) -> Outcome {
    let spec = cli.spec()?;
    let p = center_profile(&spec, cli.weight())?;
    let mut v = strip_version(p.to_json(&spec));
    let ok = p.concentrated_in_weight_one() && p.is_cyclic();
    if let Value::Object(m) = &mut v {
        m.insert("cyclic".into(), json!(p.is_cyclic()));
        m.insert("concentrated_in_weight_one".into(), json!(p.concentrated_in_weight_one()));
    }
    Ok((v, ok))
}

fn adkernel(cli: &Cli, ideal: &[String]) -> Outcome {
    let spec = cli.spec()?;
    let ideal = if ideal.is_empty() { top_layer(&spec) } else { ideal.to_vec() };
    let rep = adkernel_report(&spec, &ideal, cli.weight())?;
    Ok((strip_version(rep.to_json(&spec)), rep.equal()))
}

fn jacobi(cli: &Cli) -> Outcome {
    let spec = cli.spec()?;
    let rep = spec.validate_consistency(cli.weight())?;
    let mut v = rep.to_json();
    prepend(&mut v, "algebra", json!(spec.family().to_string()));
    Ok((v, rep.passed()))
}

fn map_verify(cli: &Cli, which: MapArg, require_injective: bool) -> Outcome {
    let f = match which {
        MapArg::Identity => LieMap::identity(Arc::new(cli.spec()?))?,
        MapArg::Induced => {
            let (r, n) = cli.need_rn()?;
            induced_generator_images(r, n)?
        }
        MapArg::PoisonJ => poison_j_map()?,
        MapArg::PoisonPxa => poison_p_alpha_map()?,
    };
    let w = cli.weight();
    let hom = f.verify_hom(w)?;
    let injective: Vec<bool> = (1..=w).map(|k| f.injectivity_rank_check(k)).collect();
    let ok = hom.passed() && (!require_injective || injective.iter().all(|&b| b));
    Ok((json!({ "map": f.to_json(), "homomorphism": hom.to_json(), "injective_by_weight": injective }), ok))
}

fn pullback_compare(cli: &Cli) -> Outcome {
    let (r, n) = cli.need_rn()?;
    let w = cli.max_weight.unwrap_or(4);
    let dict = pullback_dictionary(r, n)?;
    let equal = algebras_equal(&pullback_algebra(r, n)?, &AlgebraSpec::monomial_orbit(r, n + 1)?, &dict, w)?;
    let dictionary: Map<String, Value> = dict.into_iter().map(|(a, b)| (a, Value::String(b))).collect();
    Ok((json!({ "r": r, "n": n, "max_weight": w, "equal": equal, "dictionary": dictionary }), equal))
}

fn arr_partition(cli: &Cli) -> Outcome {
    let (r, n) = cli.need_rn()?;
    let rep = incidence_sets(r, n)?;
    let v = json!({ "total": rep.total, "is_partition": rep.is_partition, "sizes": rep.sizes() });
    let ok = rep.is_partition && rep.total == rep.ell * (rep.ell - 1) / 2;
    Ok((v, ok))
}

fn arr_images(cli: &Cli) -> Outcome {
    let (r, n) = cli.need_rn()?;
    let f = induced_generator_images(r, n)?;
    let delta = f.domain().sum_of(&monomial_delta_names(r, n), 1)?;
    let image = f.apply(&delta, 1)?;
    let expected = f.codomain().sum_of(&braid_names(r * n + 1), 1)?;
    let ok = image == expected;
    let v = json!({
        "map": f.to_json(),
        "delta": f.domain().format_element(&delta),
        "delta_image": f.codomain().format_element(&image),
        "delta_maps_to_braid_sum": ok,
    });
    Ok((v, ok))
}

fn form_json<F: FormField + std::fmt::Display>(f: &AffineForm<F>) -> Value {
    json!({ "linear": f.linear.iter().map(|c| c.to_string()).collect::<Vec<_>>(), "constant": f.constant.to_string() })
}

fn input_json<F: FormField + std::fmt::Display>(input: &RootMapInput<F>) -> Value {
    json!({
        "base_forms": input.base_forms.iter().map(form_json).collect::<Vec<_>>(),
        "fiber_factors": input.fiber_factors.iter().map(form_json).collect::<Vec<_>>(),
    })
}

fn slf(cli: &Cli, counterexample: bool) -> Outcome {
    if counterexample {
        let input = RootMapInput { base_forms: vec![], fiber_factors: vec![rational_form(&[0, 0]), rational_form(&[1, 0])] };
        let accepted = slf_check(&input)?;
        let v = json!({ "input": input_json(&input), "accepted": accepted, "expected": false });
        return Ok((v, !accepted));
    }
    let (r, n) = cli.need_rn()?;
    let input = monomial_root_map(r, n)?;
    let accepted = slf_check(&input)?;
    Ok((json!({ "r": r, "n": n, "input": input_json(&input), "accepted": accepted, "expected": true }), accepted))
}

fn mccool_relations(cli: &Cli) -> Outcome {
    let rep = verify_mccool_relations(cli.need_n()?)?;
    Ok((rep.to_json(), rep.passed()))
}

fn poison_check() -> Outcome {
    let g = PoisonElement::a(1);
    let (p, alpha) = poison_p_alpha(&g);
    let center = center_profile(&AlgebraSpec::poison_model()?, 3)?;
    let witness = g.w.format(&POISON_A);
    let ok = !g.is_identity() && p.is_identity() && alpha == [0, 0, 0] && center.rank(1) == 1;
    let v = json!({
        "kernel_witness": witness,
        "alpha": alpha,
        "p": p.format(&POISON_PHI),
        "is_identity": g.is_identity(),
        "center_rank": center.rank(1),
    });
    Ok((v, ok))
}

fn strip_version(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.shift_remove("schema_version");
    }
    v
}

fn prepend(v: &mut Value, key: &str, value: Value) {
    if let Value::Object(m) = v {
        let mut out = Map::new();
        out.insert(key.into(), value);
        out.append(m);
        *m = out;
    }
}

fn render(v: &Value) -> String {
    let mut v = strip_version(v.clone());
    prepend(&mut v, "schema_version", json!(1));
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    if let Command::Dims = cli.command {
        return Ok((dims(cli)?, true));
    }
    if cli.format == Format::Csv {
        return Err(usage("--format csv is only available for dims"));
    }
    let (value, ok) = match &cli.command {
        Command::Dims => unreachable!(),
        Command::Basis => basis(cli)?,
        Command::Bracket { x, y } => bracket(cli, x, y)?,
        Command::Centralizer { gens } => centralizer(cli, gens)?,
        Command::Center => center(cli)?,
        Command::Adkernel { ideal } => adkernel(cli, ideal)?,
        Command::Jacobi => jacobi(cli)?,
        Command::MapVerify { map, require_injective } => map_verify(cli, *map, *require_injective)?,
        Command::PullbackCompare => pullback_compare(cli)?,
        Command::ArrPartition => arr_partition(cli)?,
        Command::ArrImages => arr_images(cli)?,
        Command::SlfCheck { counterexample } => slf(cli, *counterexample)?,
        Command::MccoolRelations => mccool_relations(cli)?,
        Command::PoisonCheck => poison_check()?,
    };
    Ok((render(&value), ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, ok)) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &text),
                None => io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("polyfree: cannot write report: {e}");
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("polyfree: {msg}");
            eprintln!("run `polyfree --help` for usage");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("polyfree: {msg}");
            ExitCode::from(1)
        }
    }
}
