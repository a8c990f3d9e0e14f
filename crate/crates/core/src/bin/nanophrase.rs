use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nanophrase::formal::{angle_bracket, find_nonvanishing, gamma, FormalSum};
use nanophrase::groups::{
    gamma_coordinates, generate_relations, structure_from_presentation, AbelianGroupStructure,
};
use nanophrase::invariants::{evaluate, linking_matrix, t_invariant, InvariantArgs, InvariantName, TaggedValue};
use nanophrase::moves::{bounded_equiv, Equivalence, SearchBounds};
use nanophrase::random::{random_move_pair, rng_from_seed};
use nanophrase::{Error, HomotopyData, Nanophrase};

#[derive(Parser, Debug)]
#[command(name = "nanophrase", version, about = "Homotopy invariants of nanophrases")]
struct Cli {
    /// Built-in homotopy data: `gauss` or `vknot`
    #[arg(long, global = true, conflicts_with = "data")]
    preset: Option<String>,

    /// Homotopy data config file
    #[arg(long, global = true)]
    data: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for randomized subcommands
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads for relation generation and searches
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

#[derive(Args, Debug, Clone, Default)]
struct Selector {
    /// First component index (1-based)
    #[arg(short = 'i', long = "comp-i")]
    i: Option<usize>,
    /// Second component index (1-based)
    #[arg(short = 'j', long = "comp-j")]
    j: Option<usize>,
    /// First symbol
    #[arg(short = 'a', long = "sym-a")]
    a: Option<String>,
    /// Second symbol
    #[arg(short = 'b', long = "sym-b")]
    b: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an invariant on a phrase
    Invariant {
        #[arg(long)]
        name: String,
        #[command(flatten)]
        sel: Selector,
        phrase: String,
    },
    /// Compute G_n (or H_n with --reduced)
    Group {
        #[arg(short = 'r', long, default_value_t = 1)]
        components: usize,
        #[arg(short = 'n', long)]
        degree: usize,
        /// Quotient by shift moves
        #[arg(long)]
        closed: bool,
        /// Drop the trivial phrase, giving H_n
        #[arg(long)]
        reduced: bool,
        /// Print generators and relations as TSV after the group
        #[arg(long)]
        dump_presentation: bool,
    },
    /// Search for a homotopy between two phrases
    Equiv {
        p: String,
        q: String,
        #[arg(long)]
        closed: bool,
        /// Largest rank visited; defaults to the larger input rank plus 2
        #[arg(long)]
        max_rank: Option<usize>,
        #[arg(long, default_value_t = 200_000)]
        max_states: usize,
    },
    /// Angle bracket <u, x> of two formal sums
    Bracket { u: String, x: String },
    /// Gamma_n of a phrase, as a formal sum or as group coordinates
    Gamma {
        #[arg(short = 'n', long)]
        degree: usize,
        phrase: String,
        /// Print coordinates in G_n instead of the sum
        #[arg(long)]
        coordinates: bool,
        /// Subtract the coordinates of the trivial phrase
        #[arg(long)]
        normalize: bool,
        #[arg(long)]
        closed: bool,
    },
    /// Check the finite type degree of an invariant exhaustively
    Verify {
        #[arg(long)]
        name: String,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        max_rank: usize,
        #[arg(short = 'r', long, default_value_t = 1)]
        components: usize,
        #[command(flatten)]
        sel: Selector,
    },
    /// Check invariance under random planted moves (needs --seed)
    Invariance {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 5)]
        max_rank: usize,
        #[arg(short = 'r', long, default_value_t = 1)]
        components: usize,
        #[arg(long)]
        closed: bool,
        #[command(flatten)]
        sel: Selector,
    },
}

/// Failure with its exit code.
struct Exit(u8, String);

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        Exit(if e.is_input_error() { 2 } else { 3 }, e.to_string())
    }
}

fn input(msg: impl Into<String>) -> Exit {
    Exit(2, msg.into())
}

fn load_data(cli: &Cli) -> Result<HomotopyData, Exit> {
    match (&cli.preset, &cli.data) {
        (Some(p), None) => Ok(HomotopyData::preset(p)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
            Ok(HomotopyData::parse(&text)?)
        }
        _ => Err(input("give exactly one of --preset or --data")),
    }
}

fn selector_args(sel: &Selector, data: &HomotopyData) -> Result<InvariantArgs, Exit> {
    let index = |x: Option<usize>, flag: &str| -> Result<Option<usize>, Exit> {
        match x {
            Some(0) => Err(input(format!("-{flag} is 1-based"))),
            other => Ok(other.map(|k| k - 1)),
        }
    };
    let sym = |s: &Option<String>| -> Result<_, Exit> { Ok(s.as_deref().map(|s| data.symbol(s)).transpose()?) };
    Ok(InvariantArgs {
        i: index(sel.i, "i")?,
        j: index(sel.j, "j")?,
        a: sym(&sel.a)?,
        b: sym(&sel.b)?,
    })
}

fn invariant_name(s: &str) -> Result<InvariantName, Exit> {
    s.parse().map_err(|_| {
        let all: Vec<&str> = InvariantName::ALL.iter().map(|n| n.as_str()).collect();
        input(format!("unknown invariant `{s}` (expected one of {})", all.join(", ")))
    })
}

fn check_args(name: InvariantName, args: &InvariantArgs) -> Result<(), Exit> {
    let missing = args.missing(name);
    if missing.is_empty() {
        Ok(())
    } else {
        Err(input(format!("{name} needs -{}", missing.join(", -"))))
    }
}

fn tagged(v: &TaggedValue, format: Format) -> String {
    match format {
        Format::Text => v.to_string(),
        Format::Tsv => format!("{}\t{}", v.value, v.modulus),
    }
}

fn cmd_invariant(
    name: &str,
    sel: &Selector,
    text: &str,
    data: &HomotopyData,
    format: Format,
) -> Result<String, Exit> {
    let name = invariant_name(name)?;
    let p = Nanophrase::parse(text, data)?;
    let args = selector_args(sel, data)?;
    check_args(name, &args)?;
    let mut out = String::new();
    match name {
        InvariantName::Linking => {
            let l = linking_matrix(&p, data);
            for (i, row) in l.rows().iter().enumerate() {
                match format {
                    Format::Text => {
                        for (j, g) in row.iter().enumerate() {
                            writeln!(out, "l[{},{}] = {}", i + 1, j + 1, g.to_text(data)).unwrap();
                        }
                    }
                    Format::Tsv => {
                        let cells: Vec<String> = row.iter().map(|g| g.to_text(data)).collect();
                        writeln!(out, "{}", cells.join("\t")).unwrap();
                    }
                }
            }
        }
        InvariantName::T => {
            let t = t_invariant(&p, data)?;
            for i in 0..t.component_count() {
                for (a, b, v) in t.entries(i) {
                    let (a, b) = (data.name(a), data.name(b));
                    match format {
                        Format::Text => writeln!(out, "T^{}[{a},{b}] = {v}", i + 1).unwrap(),
                        Format::Tsv => writeln!(out, "{}\t{a}\t{b}\t{}", i + 1, tagged(&v, format)).unwrap(),
                    }
                }
            }
        }
        _ => {
            let v = evaluate(name, &args, &p, data)?[0];
            let mut key = Vec::new();
            if let Some(i) = args.i {
                key.push((i + 1).to_string());
            }
            if let Some(j) = args.j {
                key.push((j + 1).to_string());
            }
            if name != InvariantName::V4 {
                key.extend(args.a.map(|s| data.name(s).to_string()));
            }
            if name == InvariantName::U {
                key.extend(args.b.map(|s| data.name(s).to_string()));
            }
            let label = if key.is_empty() {
                name.to_string()
            } else {
                format!("{name}[{}]", key.join(","))
            };
            match format {
                Format::Text => writeln!(out, "{label} = {v}").unwrap(),
                Format::Tsv => writeln!(out, "{label}\t{}", tagged(&v, format)).unwrap(),
            }
        }
    }
    Ok(out)
}

fn structure(
    data: &HomotopyData,
    r: usize,
    n: usize,
    closed: bool,
    reduced: bool,
) -> Result<(AbelianGroupStructure, nanophrase::groups::GroupPresentation), Exit> {
    if r == 0 {
        return Err(input("-r must be at least 1"));
    }
    let pres = generate_relations(data, r, n, closed)?;
    Ok((structure_from_presentation(&pres, data, reduced), pres))
}

fn coordinates_line(c: &[TaggedValue], format: Format) -> String {
    let sep = if format == Format::Tsv { "\t" } else { " " };
    c.iter().map(|v| tagged(v, format)).collect::<Vec<_>>().join(sep)
}

fn run(cli: &Cli) -> Result<(String, u8), Exit> {
    let data = load_data(cli)?;
    let format = cli.format;
    Ok(match &cli.command {
        Command::Invariant { name, sel, phrase } => (cmd_invariant(name, sel, phrase, &data, format)?, 0),
        Command::Group {
            components,
            degree,
            closed,
            reduced,
            dump_presentation,
        } => {
            let (s, pres) = structure(&data, *components, *degree, *closed, *reduced)?;
            let mut out = format!("{s}\n");
            if *dump_presentation {
                writeln!(out, "# generators\t{}", pres.generators().len()).unwrap();
                out.push_str(&pres.generators_tsv(&data));
                writeln!(out, "# relations\t{}", pres.relations().len()).unwrap();
                out.push_str(&pres.relations_tsv(&data));
            }
            (out, 0)
        }
        Command::Equiv {
            p,
            q,
            closed,
            max_rank,
            max_states,
        } => {
            let p = Nanophrase::parse(p, &data)?;
            let q = Nanophrase::parse(q, &data)?;
            let bounds = SearchBounds {
                max_rank: max_rank.unwrap_or(p.rank().max(q.rank()) + 2),
                max_states: *max_states,
            };
            match bounded_equiv(&p, &q, &data, bounds, *closed)? {
                Equivalence::Equivalent(k) => {
                    let unit = if k == 1 { "move" } else { "moves" };
                    (format!("EQUIVALENT ({k} {unit})\n"), 0)
                }
                Equivalence::Unknown => ("UNKNOWN\n".to_string(), 1),
            }
        }
        Command::Bracket { u, x } => {
            let u = FormalSum::parse(u, &data)?;
            let x = FormalSum::parse(x, &data)?;
            (format!("{}\n", angle_bracket(&u, &x)?), 0)
        }
        Command::Gamma {
            degree,
            phrase,
            coordinates,
            normalize,
            closed,
        } => {
            let p = Nanophrase::parse(phrase, &data)?;
            if *coordinates {
                let (s, _) = structure(&data, p.component_count(), *degree, *closed, false)?;
                let c = gamma_coordinates(&p, &s, *normalize)?;
                (format!("{s}\n{}\n", coordinates_line(&c, format)), 0)
            } else {
                let g = gamma(*degree, &FormalSum::from_phrase(&p));
                let lines = g.to_lines(&data);
                let body: String = lines
                    .iter()
                    .map(|l| match format {
                        Format::Text => format!("{l}\n"),
                        Format::Tsv => format!("{}\n", l.replacen('·', "\t", 1)),
                    })
                    .collect();
                (body, 0)
            }
        }
        Command::Verify {
            name,
            degree,
            max_rank,
            components,
            sel,
        } => {
            let name = invariant_name(name)?;
            let args = selector_args(sel, &data)?;
            check_args(name, &args)?;
            let v = |p: &Nanophrase| evaluate(name, &args, p, &data);
            match find_nonvanishing(v, &data, *components, *max_rank, degree + 1)? {
                None => (
                    format!("PASS: {name} vanishes on every phrase of rank <= {max_rank} with {} dots\n", degree + 1),
                    0,
                ),
                Some((d, defect)) => {
                    let shown: Vec<String> = defect.iter().map(ToString::to_string).collect();
                    (format!("FAIL: {} -> [{}]\n", d.to_text(&data), shown.join(", ")), 1)
                }
            }
        }
        Command::Invariance {
            name,
            samples,
            max_rank,
            components,
            closed,
            sel,
        } => {
            let seed = cli.seed.ok_or_else(|| input("invariance needs --seed"))?;
            let name = invariant_name(name)?;
            let args = selector_args(sel, &data)?;
            check_args(name, &args)?;
            let mut rng = rng_from_seed(seed);
            let mut violations = 0usize;
            let mut first = None;
            for _ in 0..*samples {
                let (x, y, kind) = random_move_pair(&mut rng, &data, *components, *max_rank, *closed)?;
                if evaluate(name, &args, &x, &data)? != evaluate(name, &args, &y, &data)? {
                    violations += 1;
                    first.get_or_insert_with(|| format!("{kind:?}: {} vs {}", x.to_text(&data), y.to_text(&data)));
                }
            }
            let mut out = format!("{name}: {violations} violations in {samples} samples\n");
            if let Some(f) = first {
                writeln!(out, "first: {f}").unwrap();
            }
            (out, u8::from(violations > 0))
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("thread pool configured once");
    }
    match run(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(Exit(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
