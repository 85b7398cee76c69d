mod config;
mod examples;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use revdna_core::codes::{
    all_ring_elements, field_constants, search_divisors, verify_reversible, Symmetry, VerifyMode,
};
use revdna_core::dna::{write_fasta_record, FastaRecord};
use revdna_core::gf::{default_modulus, format_bit_poly, parse_bit_poly, primitive_moduli};
use revdna_core::{
    parse_poly_expr, parse_ring_expr, CodebookSource, DnaCodebook, FieldContext, RingContext, RingElement,
    SkewCyclicCode, SkewPolyRing,
};

use config::JobConfig;
use examples::Example;
use report::Report;

#[derive(Parser, Debug)]
#[command(name = "revdna", version, about = "Reversible DNA codes from skew cyclic codes over R_{k,s}")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Field is GF(2^{4k}).
    #[arg(long, global = true)]
    k: Option<u32>,
    /// Number of idempotent variables u_1..u_s.
    #[arg(long, global = true)]
    s: Option<u32>,
    /// Defining polynomial, e.g. `y^4+y+1` or `0x13`.
    #[arg(long, global = true)]
    modulus: Option<String>,
    /// Job file of `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Also write check results as CSV.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// `generated` or `reference`.
    #[arg(long, global = true)]
    codebook: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the field elements with theta and their DNA k-mers.
    FieldTable,
    /// Show the tuple table and idempotents, or inspect one element.
    RingInfo {
        #[arg(long)]
        element: Option<String>,
    },
    /// Test whether g right-divides x^n - 1.
    CheckDivisor(CodeArgs),
    /// Re-check a worked example.
    VerifyExample {
        #[arg(value_enum)]
        name: Option<Example>,
        #[arg(long = "name", value_enum, conflicts_with = "name")]
        name_flag: Option<Example>,
        /// Run under every primitive modulus of degree 4.
        #[arg(long)]
        modulus_sweep: bool,
    },
    /// Enumerate monic symmetric right divisors of x^n - 1.
    Search {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        deg: usize,
        #[arg(long, default_value = "palindromic")]
        symmetry: String,
        #[arg(long, value_enum, default_value_t = CoeffSet::All)]
        coeffs: CoeffSet,
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Write every codeword as a FASTA record.
    Export {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        fasta: PathBuf,
        #[arg(long, default_value_t = 1 << 24)]
        cap: u128,
    },
    /// Check that the DNA image of the code is closed under reversal.
    VerifyReversible {
        #[command(flatten)]
        code: CodeArgs,
        /// `exhaustive` or `sampled`.
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1 << 20)]
        cap: u128,
    },
    /// Dump the codebook as `element<TAB>kmer`.
    Codebook,
}

#[derive(Args, Debug)]
struct CodeArgs {
    /// Generator polynomial.
    #[arg(long)]
    g: Option<String>,
    /// Code length (even).
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoeffSet {
    /// Every ring element.
    All,
    /// Constants from the field only.
    Field,
}

/// Flags merged over the job file.
struct Job {
    cfg: JobConfig,
    k: u32,
    s: u32,
    modulus: Option<u32>,
    codebook: CodebookSource,
}

impl Job {
    fn new(global: &Global) -> Result<Self> {
        let cfg = match &global.config {
            Some(path) => JobConfig::load(path)?,
            None => JobConfig::default(),
        };
        let k = global.k.or(cfg.k).unwrap_or(1);
        let s = global.s.or(cfg.s).unwrap_or(1);
        let modulus = match global.modulus.as_ref().or(cfg.modulus.as_ref()) {
            Some(text) => Some(parse_bit_poly(text)?),
            None => None,
        };
        let codebook = global
            .codebook
            .as_ref()
            .or(cfg.codebook.as_ref())
            .map(|c| c.parse::<CodebookSource>())
            .transpose()
            .map_err(|e| anyhow!(e))?
            .unwrap_or(CodebookSource::Generated);
        Ok(Job { cfg, k, s, modulus, codebook })
    }

    fn field(&self) -> Result<Arc<FieldContext>> {
        let f = match self.modulus {
            Some(m) => FieldContext::with_modulus(self.k, m)?,
            None => FieldContext::new(self.k)?,
        };
        Ok(Arc::new(f))
    }

    fn ring(&self) -> Result<Arc<RingContext>> {
        Ok(Arc::new(RingContext::new(self.field()?, self.s)?))
    }

    fn book(&self, field: &FieldContext) -> Result<DnaCodebook> {
        Ok(DnaCodebook::build(field, self.codebook)?)
    }

    fn n(&self, flag: Option<usize>) -> Result<usize> {
        flag.or(self.cfg.n).ok_or_else(|| anyhow!("code length required (--n or `n =` in the job file)"))
    }

    fn code(&self, args: &CodeArgs) -> Result<SkewCyclicCode> {
        let ring = self.ring()?;
        let text = args
            .g
            .as_ref()
            .or(self.cfg.g.as_ref())
            .ok_or_else(|| anyhow!("generator required (--g or `g =` in the job file)"))?;
        let g = parse_poly_expr(text, &ring).with_context(|| format!("parsing generator `{text}`"))?;
        let n = self.n(args.n)?;
        Ok(SkewCyclicCode::new(ring, g, n)?)
    }
}

fn format_word(ring: &RingContext, word: &[RingElement]) -> String {
    let parts: Vec<String> = word.iter().map(|e| ring.format(e)).collect();
    format!("[{}]", parts.join("; "))
}

fn field_table(job: &Job) -> Result<()> {
    let f = job.field()?;
    let book = job.book(&f)?;
    println!("# GF(2^{}) modulus {}", f.degree(), format_bit_poly(f.modulus(), 'y'));
    println!("element\tbits\ttheta\tkmer");
    for a in f.elements() {
        println!(
            "{}\t{:0w$b}\t{}\t{}",
            f.format(a),
            a.bits(),
            f.format(f.theta(a)),
            book.tau(a),
            w = f.degree() as usize
        );
    }
    Ok(())
}

fn ring_info(job: &Job, element: Option<&str>) -> Result<()> {
    let ring = job.ring()?;
    let f = ring.field();
    println!("R_{{{},{}}} over GF(2^{}) modulus {}", job.k, job.s, f.degree(), format_bit_poly(f.modulus(), 'y'));
    println!("|R| = 4^{}", ring.cardinality_log4());
    match element {
        None => {
            println!("i\tT_i\tI_i");
            for i in 0..ring.width() {
                let t: String = ring.tuple(i).iter().map(|b| char::from(b'0' + b)).collect();
                println!("{i}\t{t}\t{}", ring.render_idempotent(i)?);
            }
        }
        Some(text) => {
            let a = parse_ring_expr(text, &ring)?;
            let book = job.book(f)?;
            let ta = ring.theta(&a);
            println!("element        {}", ring.format(&a));
            println!("crt            {}", ring.format_crt(&a));
            println!("theta          {}", ring.format(&ta));
            println!("theta crt      {}", ring.format_crt(&ta));
            println!("unit           {}", ring.is_unit(&a));
            println!("dna            {}", book.encode_element(&ring, &a)?);
            println!("dna(theta)     {}", book.encode_element(&ring, &ta)?);
        }
    }
    Ok(())
}

fn check_divisor(job: &Job, args: &CodeArgs, report: &mut Report) -> Result<()> {
    let ring = job.ring()?;
    let text = args.g.as_ref().or(job.cfg.g.as_ref()).ok_or_else(|| anyhow!("generator required"))?;
    let g = parse_poly_expr(text, &ring)?;
    let n = job.n(args.n)?;
    let p = SkewPolyRing::new(&ring);
    let divides = p.right_divides_xn_minus_1(&g, n)?;
    let rem = p.right_rem(&p.x_n_minus_1(n), &g)?;
    let detail = if divides { String::new() } else { format!("remainder {}", p.format(&rem)) };
    report.push("check-divisor", format!("g right-divides x^{n} - 1"), divides, detail);
    if divides {
        let code = SkewCyclicCode::new(ring.clone(), g, n)?;
        report.info("check-divisor", "symmetry", code.symmetry().to_string());
        report.info("check-divisor", "dimension", format!("t = {}, |C| = 4^{}", code.t(), code.cardinality_log4()));
    }
    Ok(())
}

fn verify_examples(job: &Job, name: Option<Example>, sweep: bool, report: &mut Report) -> Result<()> {
    let list = match name {
        Some(ex) => vec![ex],
        None => vec![Example::Ex1, Example::Ex2, Example::Ex3, Example::Ex4, Example::Ex5],
    };
    if !sweep {
        let m = job.modulus.unwrap_or(default_modulus(1)?);
        for ex in list {
            examples::run(ex, m, true, report)?;
        }
        return Ok(());
    }
    let moduli = primitive_moduli(1)?;
    for ex in list {
        let mut holds_somewhere = false;
        for &m in &moduli {
            holds_somewhere |= examples::run(ex, m, false, report)?;
        }
        let name = format!("holds under some primitive quartic ({} tried)", moduli.len());
        if ex == Example::Ex5 {
            report.info(ex.label(), name, if holds_somewhere { "yes" } else { "no" });
        } else {
            report.push(ex.label(), name, holds_somewhere, "");
        }
    }
    Ok(())
}

fn search(
    job: &Job,
    n: Option<usize>,
    deg: usize,
    symmetry: &str,
    coeffs: CoeffSet,
    budget: Option<u128>,
) -> Result<()> {
    let ring = job.ring()?;
    let n = job.n(n)?;
    let symmetry: Symmetry = symmetry.parse().map_err(|e: String| anyhow!(e))?;
    let budget = budget.or(job.cfg.budget).unwrap_or(1 << 24);
    let set = match coeffs {
        CoeffSet::All => all_ring_elements(&ring, budget)
            .ok_or_else(|| anyhow!("ring has more than {budget} elements; use --coeffs field"))?,
        CoeffSet::Field => field_constants(&ring),
    };
    let found = search_divisors(&ring, n, deg, symmetry, &set, budget)?;
    let p = SkewPolyRing::new(&ring);
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for g in &found {
        writeln!(out, "{}", p.format(g))?;
    }
    writeln!(out, "found {} right divisors of x^{n} - 1 ({symmetry}, degree {deg})", found.len())?;
    Ok(())
}

fn export(job: &Job, args: &CodeArgs, fasta: &PathBuf, cap: u128) -> Result<()> {
    let code = job.code(args)?;
    let ring = code.ring();
    let book = job.book(ring.field())?;
    let file = File::create(fasta).with_context(|| format!("creating {}", fasta.display()))?;
    let mut w = BufWriter::new(file);
    let mut count = 0u64;
    for (i, cw) in code.codewords(cap)?.enumerate() {
        let msg = cw.message.as_deref().unwrap_or(&[]);
        let rec = FastaRecord {
            header: format!("cw{i} msg={}", format_word(ring, msg)),
            sequence: book.encode_word(ring, &cw.word)?,
        };
        write_fasta_record(&mut w, &rec)?;
        count += 1;
    }
    w.flush()?;
    println!("wrote {count} records to {}", fasta.display());
    Ok(())
}

fn verify_rev(
    job: &Job,
    args: &CodeArgs,
    mode: Option<&str>,
    trials: Option<usize>,
    seed: Option<u64>,
    cap: u128,
    report: &mut Report,
) -> Result<()> {
    let code = job.code(args)?;
    let book = job.book(code.ring().field())?;
    let mode = match mode.or(job.cfg.mode.as_deref()).unwrap_or("exhaustive") {
        "exhaustive" => VerifyMode::Exhaustive { cap },
        "sampled" => VerifyMode::Sampled {
            trials: trials.or(job.cfg.trials).unwrap_or(1000),
            seed: seed.or(job.cfg.seed).unwrap_or(0),
        },
        other => bail!("unknown mode `{other}` (expected exhaustive or sampled)"),
    };
    let rep = verify_reversible(&code, &book, mode)?;
    report.info("verify-reversible", "symmetry", code.symmetry().to_string());
    let detail = match &rep.counterexample {
        Some(ce) => {
            format!("msg={} dna={} other={}: {}", format_word(code.ring(), &ce.message), ce.dna, ce.other, ce.reason)
        }
        None => String::new(),
    };
    report.push("verify-reversible", format!("{mode}, {} words checked", rep.checked), rep.passed, detail);
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    let job = Job::new(&cli.global)?;
    let mut report = Report::default();
    match &cli.command {
        Command::FieldTable => field_table(&job)?,
        Command::RingInfo { element } => ring_info(&job, element.as_deref())?,
        Command::CheckDivisor(args) => check_divisor(&job, args, &mut report)?,
        Command::VerifyExample { name, name_flag, modulus_sweep } => {
            verify_examples(&job, name.or(*name_flag), *modulus_sweep, &mut report)?
        }
        Command::Search { n, deg, symmetry, coeffs, budget } => search(&job, *n, *deg, symmetry, *coeffs, *budget)?,
        Command::Export { code, fasta, cap } => export(&job, code, fasta, *cap)?,
        Command::VerifyReversible { code, mode, trials, seed, cap } => {
            verify_rev(&job, code, mode.as_deref(), *trials, *seed, *cap, &mut report)?
        }
        Command::Codebook => {
            let f = job.field()?;
            print!("{}", job.book(&f)?.dump(&f));
        }
    }
    if let Some(path) = &cli.global.csv {
        report.write_csv(path)?;
    }
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
