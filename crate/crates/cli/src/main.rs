use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hurwitz_sunits::builder::DEFAULT_ORACLE_CAP;
use hurwitz_sunits::norms::elements_of_norm;
use hurwitz_sunits::presentation::Provenance;
use hurwitz_sunits::{
    abelianization, build_main, build_oracle_with, congruence_image, export, fixture, parse_json, simplify,
    verify_presentation, Error, Format, Parallelism, Presentation, SPrimeSet, SimplifyBudget,
};

#[derive(Parser)]
#[command(name = "sunits", version, about = "Presentations of projective S-unit groups of the Hurwitz order")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a presentation and print it.
    Present {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        /// Use the divisor-table builder instead of the main algorithm.
        #[arg(long)]
        oracle: bool,
        /// Size limit for the oracle builder.
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: usize,
        #[arg(long)]
        simplify: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the Hurwitz quaternions of a given reduced norm.
    Enumerate {
        #[arg(long)]
        norm: u64,
    },
    /// Check that every relator evaluates to a rational scalar.
    Verify {
        #[command(flatten)]
        source: Source,
    },
    /// Print the abelianization invariants.
    Abelianize {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        simplify: bool,
    },
    /// Reduce a presentation modulo q^power and measure its image.
    Congruence {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        power: u32,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Build the main presentation for these primes.
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Load a tabulated presentation, e.g. s3_5.
    #[arg(long)]
    fixture: Option<String>,
    /// Load a presentation from a JSON file.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Gap,
    Magma,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Gap => Format::Gap,
            OutputFormat::Magma => Format::Magma,
        }
    }
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl Source {
    fn load(&self) -> Result<Presentation, Failure> {
        if let Some(primes) = &self.primes {
            return Ok(build_main(&SPrimeSet::new(primes.iter().copied())?)?);
        }
        if let Some(name) = &self.fixture {
            return Ok(fixture(name)?);
        }
        let path = self.file.as_ref().expect("clap enforces one source");
        let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        Ok(parse_json(&text)?)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Present { primes, oracle, cap, simplify: simp, format, out } => {
            let s = SPrimeSet::new(primes)?;
            let mut p = if oracle { build_oracle_with(&s, cap, Parallelism::default())? } else { build_main(&s)? };
            match &p.provenance {
                Provenance::Main(counts) => eprintln!("{counts}"),
                Provenance::Oracle { triples } => eprintln!("products: {triples}"),
                _ => {}
            }
            if simp {
                p = simplify(&p, SimplifyBudget::default());
            }
            eprintln!("generators: {}, relators: {}", p.generator_count(), p.relators.len());
            let text = export(&p, format.into());
            match out {
                Some(path) => fs::write(&path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
        }
        Command::Enumerate { norm } => {
            if norm == 0 {
                return Err(Failure::Usage("norm must be positive".into()));
            }
            let elements = elements_of_norm(norm);
            println!("{}", elements.len());
            for e in elements {
                println!("{e}");
            }
        }
        Command::Verify { source } => {
            let p = source.load()?;
            let report = verify_presentation(&p);
            if let Some(m) = &report.malformed {
                return Err(Failure::Check(m.clone()));
            }
            for i in &report.non_sunit_witnesses {
                println!("generator {} ({}) has a norm outside S", i + 1, p.generators[*i].label);
            }
            let failing = report.failing_relators();
            for i in &failing {
                println!("relator {} is not a scalar", i + 1);
            }
            if !report.passed() {
                return Err(Failure::Check("verification failed".into()));
            }
            println!("ok: {} generators, {} relators", p.generator_count(), p.relators.len());
        }
        Command::Abelianize { source, simplify: simp } => {
            let mut p = source.load()?;
            if simp {
                p = simplify(&p, SimplifyBudget::default());
            }
            println!("{}", abelianization(&p));
        }
        Command::Congruence { source, q, power, cap } => {
            let p = source.load()?;
            let report = congruence_image(&p, q, power, cap)?;
            let sp = &report.splitting;
            println!("splitting mod {}: a = {}, b = {}", sp.modulus, sp.a, sp.b);
            let scalar = report.relator_scalar.iter().filter(|b| **b).count();
            println!("scalar relators: {scalar}/{}", report.relator_scalar.len());
            println!("image order: {}", report.image_order);
            if !report.all_relators_scalar() {
                return Err(Failure::Check("some relators are not scalar".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
