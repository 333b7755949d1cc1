use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use circfib::baseb::verify_cyclic_group;
use circfib::cli::cache::Cache;
use circfib::cli::output::{Format, Table};
use circfib::cli::report::{Claim, VerificationReport};
use circfib::cli::verify::{
    check_gcd_property, check_identity_fiber, check_image_sets, check_multiple_types,
    check_order_q, check_types_at, check_wheel_bijection, check_wheel_count, check_wheel_transport,
    run_verify,
};
use circfib::error::{Error, Result};
use circfib::fibcore::CircWord;
use circfib::group::{self, d_value, predicted_factors, scalar_mul, GroupElement};
use circfib::orderq::{
    minimal_even_length, minimal_even_length_via_d, p_group, pi_words, primitive_period,
};
use circfib::rewrite::orbit;
use circfib::typology::{classify, fib_partition, image_sets, structural_class, TypeTag};
use circfib::wheels::{count_trees_matrix, spanning_trees, tree_to_word};

#[derive(Parser)]
#[command(
    name = "circfib",
    version,
    about = "Circular words under the Fibonacci constraint",
    long_about = "Circular words under the Fibonacci constraint.\n\n\
        Words are digit strings with index 0 leftmost, valued by sum w_i F_i \
        with F_0 = 1, F_1 = 2. Digits above 9 need comma-separated input, e.g. 0,12,0,1."
)]
struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Tsv)]
    format: OutFormat,

    /// Directory for cached tables; caching is off when unset.
    #[arg(long, global = true, env = "CIRCFIB_CACHE")]
    cache_dir: Option<PathBuf>,

    /// Largest l whose group may be enumerated.
    #[arg(long, global = true, default_value_t = group::DEFAULT_MAX_ELL)]
    max_ell: usize,

    /// Largest q for verification.
    #[arg(long, global = true, default_value_t = 10)]
    max_q: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Tsv,
    Jsonlines,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Tsv => Format::Tsv,
            OutFormat::Jsonlines => Format::JsonLines,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of a word.
    Reduce { word: String },
    /// Every word reachable by the rewrite moves, with digits capped.
    Orbit {
        word: String,
        /// Largest digit allowed along the way (default: max(2, largest digit)).
        #[arg(long)]
        cap: Option<u32>,
        /// Stop after this many words.
        #[arg(long, default_value_t = 2_000_000)]
        limit: usize,
    },
    /// Sum of two words of the same even length.
    Add { u: String, v: String },
    /// Inverse of a word.
    Neg { u: String },
    /// k times a word; k may be negative.
    Mul {
        #[arg(allow_negative_numbers = true)]
        k: i64,
        u: String,
    },
    /// The group of admissible words of length 2l.
    Group(GroupArgs),
    /// Elements of order dividing q.
    Orderq(OrderqArgs),
    /// The three-way type partition.
    Types(TypesArgs),
    /// Equal-count blocks of the Fibonacci word.
    Fibword(FibwordArgs),
    /// Spanning trees of the wheel and their words.
    Wheel(WheelArgs),
    /// gcd(d(m), d(n)) = d(gcd(m, n)) and the repetition maps.
    GcdCheck {
        #[arg(long, default_value_t = 30)]
        max: usize,
    },
    /// Base-b circular words: multiples of the period of 1/q.
    ///
    /// Unlike the other commands, base-b words are written most significant
    /// digit first, as in 142857.
    DemoBase {
        #[arg(long, default_value_t = 10)]
        base: u32,
        #[arg(long, default_value_t = 7)]
        q: u64,
    },
    /// Run every check within --max-ell and --max-q.
    Verify,
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true)))]
struct GroupArgs {
    #[arg(long)]
    ell: usize,
    /// Elements in enumeration order.
    #[arg(long, group = "mode")]
    list: bool,
    #[arg(long, group = "mode")]
    count: bool,
    /// Invariant factors.
    #[arg(long, group = "mode")]
    structure: bool,
    /// Addition table over element indices (l <= 4).
    #[arg(long, group = "mode")]
    table: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true)))]
struct OrderqArgs {
    #[arg(long)]
    q: u64,
    #[arg(long, group = "mode")]
    min_length: bool,
    /// The two words whose multiples are Zeckendorf multiples.
    #[arg(long, group = "mode")]
    pi: bool,
    #[arg(long, group = "mode")]
    elements: bool,
    #[arg(long, group = "mode")]
    verify: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true)))]
struct TypesArgs {
    #[arg(long)]
    ell: usize,
    /// Type of every element.
    #[arg(long, group = "mode")]
    partition: bool,
    /// Valuations of each class next to the closed forms.
    #[arg(long, group = "mode")]
    image_sets: bool,
    #[arg(long, group = "mode")]
    verify: bool,
}

#[derive(Args)]
struct FibwordArgs {
    #[arg(long)]
    ell: usize,
    #[arg(long, required = true)]
    partition: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true)))]
struct WheelArgs {
    #[arg(long)]
    ell: usize,
    #[arg(long, group = "mode")]
    count: bool,
    #[arg(long, group = "mode")]
    trees: bool,
    /// spokes bitmask, rims bitmask, raw word, normal form.
    #[arg(long, group = "mode")]
    map: bool,
    #[arg(long, group = "mode")]
    verify_bijection: bool,
}

/// A table to print and whether the command's checks held.
struct Outcome {
    table: Table,
    ok: bool,
}

impl From<Table> for Outcome {
    fn from(table: Table) -> Self {
        Outcome { table, ok: true }
    }
}

impl From<VerificationReport> for Outcome {
    fn from(r: VerificationReport) -> Self {
        Outcome {
            ok: r.passed(),
            table: r.to_table(),
        }
    }
}

fn claims(suite: &str, claims: Vec<Claim>) -> Outcome {
    let mut r = VerificationReport::new(suite);
    r.extend(claims);
    r.into()
}

fn word(s: &str) -> Result<CircWord> {
    s.parse()
}

fn element(s: &str) -> Result<GroupElement> {
    GroupElement::from_any(&word(s)?)
}

fn row<const N: usize>(cells: [String; N]) -> Vec<String> {
    cells.into()
}

fn run(cli: &Cli) -> Result<Outcome> {
    let cache = Cache::new(cli.cache_dir.clone());
    let max_ell = cli.max_ell;
    Ok(match &cli.command {
        Command::Reduce { word: w } => {
            let u = element(w)?;
            let mut t = Table::new(&["input", "normal_form", "valuation"]);
            t.push(row([
                word(w)?.to_string(),
                u.to_string(),
                u.valuation().to_string(),
            ]));
            t.into()
        }
        Command::Orbit {
            word: w,
            cap,
            limit,
        } => {
            let w = word(w)?;
            let cap = cap.unwrap_or_else(|| w.max_digit().max(2));
            let o = orbit(&w, cap, *limit)?;
            let mut t = Table::new(&["word", "admissible"]);
            for m in &o.members {
                t.push(row([m.to_string(), m.is_admissible().to_string()]));
            }
            if o.truncated {
                print(&t, cli.format.into());
                return Err(Error::Resource(format!(
                    "orbit of {w} has more than {limit} words with digits up to {cap}"
                )));
            }
            t.into()
        }
        Command::Add { u, v } => {
            let (a, b) = (element(u)?, element(v)?);
            let mut t = Table::new(&["u", "v", "sum"]);
            t.push(row([
                a.to_string(),
                b.to_string(),
                group::add(&a, &b)?.to_string(),
            ]));
            t.into()
        }
        Command::Neg { u } => {
            let a = element(u)?;
            let mut t = Table::new(&["u", "neg"]);
            t.push(row([a.to_string(), group::neg(&a).to_string()]));
            t.into()
        }
        Command::Mul { k, u } => {
            let a = element(u)?;
            let mut t = Table::new(&["k", "u", "product"]);
            t.push(row([
                k.to_string(),
                a.to_string(),
                scalar_mul(*k, &a).to_string(),
            ]));
            t.into()
        }
        Command::Group(g) => group_command(g, &cache, max_ell)?,
        Command::Orderq(o) => orderq_command(o, max_ell)?,
        Command::Types(a) => types_command(a, max_ell)?,
        Command::Fibword(f) => {
            debug_assert!(f.partition);
            let p = fib_partition(f.ell)?;
            let mut t = Table::new(&["index", "block", "a_count", "b_count"]);
            for b in &p.blocks {
                t.push(row([
                    b.index.to_string(),
                    b.block.to_string(),
                    b.a_count.to_string(),
                    b.b_count.to_string(),
                ]));
            }
            Outcome {
                table: t,
                ok: p.counts_constant(),
            }
        }
        Command::Wheel(w) => wheel_command(w, &cache, max_ell)?,
        Command::GcdCheck { max } => claims(
            "gcd-check",
            check_gcd_property(*max, d_value, 3.min(max_ell)),
        ),
        Command::DemoBase { base, q } => {
            let r = verify_cyclic_group(*base, *q)?;
            let mut t = Table::new(&["i", "by_addition", "by_value", "agrees"]);
            for m in &r.rows {
                t.push(row([
                    m.i.to_string(),
                    m.by_addition.to_string(),
                    m.by_value.to_string(),
                    m.agrees().to_string(),
                ]));
            }
            Outcome {
                table: t,
                ok: r.passed(),
            }
        }
        Command::Verify => run_verify(max_ell, cli.max_q)?.into(),
    })
}

fn group_command(g: &GroupArgs, cache: &Cache, max_ell: usize) -> Result<Outcome> {
    if g.count {
        let mut t = Table::new(&["ell", "order"]);
        t.push(row([
            g.ell.to_string(),
            cache.enumeration(g.ell, max_ell)?.len().to_string(),
        ]));
        return Ok(t.into());
    }
    if g.list {
        let mut t = Table::new(&["index", "word", "valuation"]);
        for (i, u) in cache.enumeration(g.ell, max_ell)?.iter().enumerate() {
            t.push(row([
                i.to_string(),
                u.to_string(),
                u.valuation().to_string(),
            ]));
        }
        return Ok(t.into());
    }
    if g.structure {
        let s = cache.group(g.ell, max_ell)?.structure()?;
        let (p1, p2) = predicted_factors(g.ell, d_value);
        let mut t = Table::new(&["ell", "order", "e1", "e2", "d", "predicted"]);
        t.push(row([
            g.ell.to_string(),
            s.order.to_string(),
            s.invariant_factors.0.to_string(),
            s.invariant_factors.1.to_string(),
            s.d.to_string(),
            format!("{p1} {p2}"),
        ]));
        return Ok(t.into());
    }
    if g.ell > 4 {
        return Err(Error::Resource(format!(
            "tables are printed for l <= 4, not {}",
            g.ell
        )));
    }
    let table = cache.cayley_table(g.ell, max_ell)?;
    let cols: Vec<String> = std::iter::once("index".to_string())
        .chain((0..table.len()).map(|j| j.to_string()))
        .collect();
    let mut t = Table::new(&cols.iter().map(String::as_str).collect::<Vec<_>>());
    for (i, r) in table.iter().enumerate() {
        t.push(
            std::iter::once(i.to_string())
                .chain(r.iter().map(usize::to_string))
                .collect(),
        );
    }
    Ok(t.into())
}

fn orderq_command(o: &OrderqArgs, max_ell: usize) -> Result<Outcome> {
    if o.min_length {
        let mut t = Table::new(&["q", "length", "length_via_d"]);
        t.push(row([
            o.q.to_string(),
            minimal_even_length(o.q)?.to_string(),
            minimal_even_length_via_d(o.q)?.to_string(),
        ]));
        return Ok(t.into());
    }
    if o.pi {
        let (pi, pi_prime) = pi_words(o.q)?;
        let mut t = Table::new(&["q", "pi", "pi_prime", "n_pi", "n_pi_prime"]);
        t.push(row([
            o.q.to_string(),
            pi.to_string(),
            pi_prime.to_string(),
            pi.valuation().to_string(),
            pi_prime.valuation().to_string(),
        ]));
        return Ok(t.into());
    }
    if o.elements {
        let mut t = Table::new(&["word", "primitive_period", "order"]);
        for p in p_group(o.q, max_ell)? {
            t.push(row([
                p.element.to_string(),
                primitive_period(&p.element).to_string(),
                group::element_order(&p.element).to_string(),
            ]));
        }
        return Ok(t.into());
    }
    Ok(claims("orderq", check_order_q(o.q, max_ell)))
}

fn types_command(a: &TypesArgs, max_ell: usize) -> Result<Outcome> {
    if a.partition {
        let mut t = Table::new(&["word", "valuation", "type", "shape_type"]);
        for u in group::enumerate_bounded(a.ell, max_ell)? {
            let shape = if u.is_identity() {
                "-".to_string()
            } else {
                structural_class(&u)?.to_string()
            };
            t.push(row([
                u.to_string(),
                u.valuation().to_string(),
                classify(&u)?.to_string(),
                shape,
            ]));
        }
        return Ok(t.into());
    }
    if a.image_sets {
        let s = image_sets(a.ell, max_ell)?;
        let mut t = Table::new(&["type", "computed", "formula", "offset"]);
        let join = |xs: &std::collections::BTreeSet<num_bigint::BigUint>| {
            xs.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        for tag in TypeTag::ALL {
            t.push(row([
                tag.to_string(),
                join(&s.computed[&tag]),
                join(&s.formula[&tag]),
                s.offset(tag).map_or("none".to_string(), |c| c.to_string()),
            ]));
        }
        return Ok(t.into());
    }
    let mut c = check_types_at(a.ell, max_ell);
    c.extend(check_image_sets(a.ell.min(max_ell)));
    c.extend(check_multiple_types(a.ell));
    Ok(claims("types", c))
}

fn wheel_command(w: &WheelArgs, cache: &Cache, max_ell: usize) -> Result<Outcome> {
    if w.count {
        let mut t = Table::new(&["ell", "backtracking", "matrix"]);
        t.push(row([
            w.ell.to_string(),
            spanning_trees(w.ell, max_ell)?.len().to_string(),
            count_trees_matrix(w.ell)?.to_string(),
        ]));
        return Ok(t.into());
    }
    if w.trees {
        let mut t = Table::new(&["index", "edges"]);
        for (i, tree) in spanning_trees(w.ell, max_ell)?.iter().enumerate() {
            t.push(row([i.to_string(), tree.to_string()]));
        }
        return Ok(t.into());
    }
    if w.map {
        let table = cache.taxonomy(w.ell, max_ell)?;
        let mut t = Table::new(&["spokes", "rims", "raw_word", "normal_form"]);
        for (tree, u) in table.trees().iter().zip(table.images()) {
            t.push(row([
                tree.spokes().to_string(),
                tree.rims().to_string(),
                tree_to_word(tree).to_string(),
                u.to_string(),
            ]));
        }
        return Ok(t.into());
    }
    let mut c = vec![
        check_wheel_count(w.ell, max_ell),
        check_wheel_bijection(w.ell, max_ell),
        check_identity_fiber(w.ell, max_ell),
    ];
    // every triple of trees
    if w.ell <= 3 {
        c.push(check_wheel_transport(w.ell, max_ell));
    }
    Ok(claims("wheel", c))
}

fn print(table: &Table, format: Format) {
    print!("{}", table.encode(format));
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print(&out.table, cli.format.into());
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
