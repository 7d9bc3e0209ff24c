//! `dloco` — encode/decode message streams as run-length-limited DNA,
//! reproduce the rate/complexity tables, and run channel experiments.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when a decode
//! raises any detection flag.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dloco::analysis::{beta_max, capacity, dominant_eigenvalue, fstd_adjacency, rate_table};
use dloco::bridging::BridgeScheme;
use dloco::codec::{symbols_from_str, symbols_to_string};
use dloco::detection::{
    bound_curves_csv, bound_ii_full, log_spaced_grid, monte_carlo_detection, p_un_scheme_iii,
};
use dloco::rll::RllCode;
use dloco::stream::{StreamCodec, StreamConfig};
use dloco::{CardinalityTable, CodeParams};

#[derive(Parser)]
#[command(
    name = "dloco",
    version,
    about = "Run-length-limited DNA constrained codes: codecs, tables, bounds, simulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    I,
    Iia,
    Iib,
    Iii,
}

impl From<SchemeArg> for BridgeScheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::I => BridgeScheme::I,
            SchemeArg::Iia => BridgeScheme::IIA,
            SchemeArg::Iib => BridgeScheme::IIB,
            SchemeArg::Iii => BridgeScheme::III,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
}

#[derive(Args)]
struct CodeArgs {
    /// Alphabet size.
    #[arg(long, default_value_t = 4)]
    q: u8,
    /// Maximum run length.
    #[arg(long, default_value_t = 3)]
    ell: usize,
    /// Codeword length in symbols.
    #[arg(long)]
    m: Option<usize>,
    /// Constituent length for scheme III (codeword length 3*mprime).
    #[arg(long)]
    mprime: Option<usize>,
}

impl CodeArgs {
    fn resolve_m(&self) -> Result<usize, String> {
        match (self.m, self.mprime) {
            (Some(m), None) => Ok(m),
            (None, Some(mp)) => Ok(3 * mp),
            (Some(m), Some(mp)) if m == 3 * mp => Ok(m),
            (Some(_), Some(_)) => Err("--m and --mprime disagree".into()),
            (None, None) => Err("one of --m or --mprime is required".into()),
        }
    }
}

#[derive(Args)]
struct StreamArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Bridging scheme.
    #[arg(long, value_enum, default_value = "iib")]
    scheme: SchemeArg,
    /// Balance GC-content by codeword/complement selection (default on).
    #[arg(long, overrides_with = "no_balance")]
    balance: bool,
    /// Disable balancing.
    #[arg(long, overrides_with = "balance")]
    no_balance: bool,
}

impl StreamArgs {
    fn balancing(&self) -> bool {
        self.balance || !self.no_balance
    }

    fn codec(&self) -> Result<StreamCodec, String> {
        let m = self.code.resolve_m()?;
        let params = CodeParams::new(self.code.q, self.code.ell, m).map_err(|e| e.to_string())?;
        let config = StreamConfig::new(params, self.scheme.into(), self.balancing())
            .map_err(|e| e.to_string())?;
        StreamCodec::new(config).map_err(|e| e.to_string())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Encode a binary message into a DNA stream.
    Encode {
        #[command(flatten)]
        stream: StreamArgs,
        /// Message file: a 0/1 string, 0x-prefixed hex, or raw bytes
        /// (bits taken most-significant first). Stdin when omitted.
        #[arg(long)]
        input: Option<String>,
        /// Output file (stdout when omitted).
        #[arg(long)]
        output: Option<String>,
    },
    /// Decode DNA streams (one per line) back to message bits.
    Decode {
        #[command(flatten)]
        stream: StreamArgs,
        #[arg(long)]
        input: Option<String>,
        #[arg(long)]
        output: Option<String>,
        /// Report format on stderr.
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Cardinality, storage, and adder-size queries; table dump/load.
    Card {
        #[command(flatten)]
        code: CodeArgs,
        /// Write the cardinality table dump to this file.
        #[arg(long)]
        output: Option<String>,
        /// Load and verify a table dump instead of rebuilding.
        #[arg(long)]
        input: Option<String>,
    },
    /// Rate table, adder sizes, and storage overheads.
    Tables {
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Transition-diagram capacity for (q, ell).
    Capacity {
        #[arg(long, default_value_t = 4)]
        q: u8,
        #[arg(long, default_value_t = 3)]
        ell: usize,
    },
    /// No-detection bound curves as CSV.
    Bounds {
        /// Scheme III constituent length (default emits both built-in
        /// figure configurations).
        #[arg(long)]
        mprime: Option<usize>,
        /// Scheme II-B codeword length.
        #[arg(long)]
        m: Option<usize>,
        /// Explicit probability grid (comma-separated); log-spaced
        /// over [1e-3, 0.2] when omitted.
        #[arg(long, value_delimiter = ',')]
        p: Vec<f64>,
        /// Add Monte-Carlo columns with this many frames per grid point.
        #[arg(long, default_value_t = 0)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        output: Option<String>,
    },
    /// Monte-Carlo detection experiment over the substitution channel.
    Simulate {
        #[command(flatten)]
        stream: StreamArgs,
        /// Substitution probability.
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Binary run-length-limited code built from difference vectors.
    Rll {
        /// Source codeword length (RLL words have length m-1).
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        ell: usize,
        /// Rank this 0/1 word.
        #[arg(long)]
        rank: Option<String>,
        /// Unrank this decimal index.
        #[arg(long)]
        unrank: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help/version requests are not usage errors.
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn read_input(path: &Option<String>) -> Result<Vec<u8>, String> {
    match path {
        Some(p) => fs::read(p).map_err(|e| format!("{p}: {e}")),
        None => {
            let mut buf = Vec::new();
            io::stdin().read_to_end(&mut buf).map_err(|e| e.to_string())?;
            Ok(buf)
        }
    }
}

fn write_output(path: &Option<String>, content: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| format!("{p}: {e}")),
        None => {
            io::stdout().write_all(content.as_bytes()).map_err(|e| e.to_string())
        }
    }
}

/// Message bytes -> bits: a 0/1 string or 0x-prefixed hex when the content
/// is text of that shape, raw bytes (MSB first) otherwise.
fn parse_message(data: &[u8]) -> Result<Vec<bool>, String> {
    if let Ok(text) = std::str::from_utf8(data) {
        let t: String = text.split_whitespace().collect();
        if !t.is_empty() && t.chars().all(|c| c == '0' || c == '1') {
            return Ok(t.chars().map(|c| c == '1').collect());
        }
        if let Some(hex) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
            if !hex.is_empty() && hex.chars().all(|c| c.is_ascii_hexdigit()) {
                let mut bits = Vec::with_capacity(hex.len() * 4);
                for c in hex.chars() {
                    let v = c.to_digit(16).unwrap();
                    for k in (0..4).rev() {
                        bits.push((v >> k) & 1 == 1);
                    }
                }
                return Ok(bits);
            }
        }
    }
    let mut bits = Vec::with_capacity(data.len() * 8);
    for byte in data {
        for k in (0..8).rev() {
            bits.push((byte >> k) & 1 == 1);
        }
    }
    if bits.is_empty() {
        return Err("empty message".into());
    }
    Ok(bits)
}

fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Encode { stream, input, output } => {
            let codec = stream.codec()?;
            let bits = parse_message(&read_input(&input)?)?;
            let dna = codec.encode(&bits).map_err(|e| e.to_string())?;
            let mut text = symbols_to_string(&dna, codec.config().params.q);
            text.push('\n');
            write_output(&output, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Decode { stream, input, output, format } => {
            let codec = stream.codec()?;
            let data = read_input(&input)?;
            let text = std::str::from_utf8(&data).map_err(|_| "DNA input is not text")?;
            let mut out = String::new();
            let mut any_flagged = false;
            let mut report_out = String::new();
            if matches!(format, FormatArg::Csv) {
                report_out.push_str("stream,frame,run_violation,index_out_of_range,flags\n");
            }
            for (idx, line) in text.lines().filter(|l| !l.trim().is_empty()).enumerate() {
                let dna = symbols_from_str(line, codec.config().params.q)
                    .map_err(|e| e.to_string())?;
                let (bits, report) = codec.decode(&dna).map_err(|e| e.to_string())?;
                out.push_str(&bits_to_string(&bits));
                out.push('\n');
                any_flagged |= !report.is_clean();
                match format {
                    FormatArg::Text => {
                        for frame in &report.flagged {
                            report_out.push_str(&format!("stream={idx} {frame}\n"));
                        }
                        report_out.push_str(&format!(
                            "stream={idx} frames={} flagged={}\n",
                            report.total_frames,
                            report.flagged_frames()
                        ));
                    }
                    FormatArg::Csv => {
                        for frame in &report.flagged {
                            let flags: Vec<String> =
                                frame.flags.iter().map(|f| f.to_string()).collect();
                            report_out.push_str(&format!(
                                "{idx},{},{},{},{}\n",
                                frame.frame,
                                frame.run_violation,
                                frame.index_out_of_range,
                                flags.join(";")
                            ));
                        }
                    }
                }
            }
            write_output(&output, &out)?;
            eprint!("{report_out}");
            Ok(if any_flagged { ExitCode::from(2) } else { ExitCode::SUCCESS })
        }
        Command::Card { code, output, input } => {
            let m = code.resolve_m()?;
            let table = match &input {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
                    let t = CardinalityTable::from_text(&text).map_err(|e| e.to_string())?;
                    if t.q() != code.q || t.ell() != code.ell || t.horizon() < m {
                        return Err("loaded table does not match the requested parameters".into());
                    }
                    t
                }
                None => CardinalityTable::build(code.q, code.ell, m).map_err(|e| e.to_string())?,
            };
            println!("q={} ell={} m={}", code.q, code.ell, m);
            println!("N(m)={}", table.cardinality(m).map_err(|e| e.to_string())?);
            println!(
                "storage_overhead_bits={}",
                table.storage_overhead_bits(m).map_err(|e| e.to_string())?
            );
            println!("adder_size_bits={}", table.adder_size_bits(m).map_err(|e| e.to_string())?);
            if let Some(path) = output {
                fs::write(&path, table.to_text()).map_err(|e| format!("{path}: {e}"))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Tables { format } => {
            let table = CardinalityTable::build(4, 3, 99).map_err(|e| e.to_string())?;
            let ms = [9, 13, 21, 33, 51, 99];
            let mps = [5, 7, 11, 17, 21, 33];
            let rt = rate_table(&table, &ms, &mps).map_err(|e| e.to_string())?;
            match format {
                FormatArg::Text => {
                    println!("Normalized balanced rates (ell = 3):");
                    print!("{}", rt.to_text());
                    println!();
                    println!("Adder sizes (bits):");
                    println!("   m  I/II-A/II-B |   m'         III");
                    for (&m, &mp) in ms[..].iter().zip(&mps) {
                        let a = table.adder_size_bits(m).map_err(|e| e.to_string())?;
                        let b = table.adder_size_bits(3 * mp).map_err(|e| e.to_string())?;
                        println!("{m:>4}  {a:>11} | {mp:>4}  {b:>10}");
                    }
                    println!();
                    println!("Storage overhead (bits of offline memory):");
                    for m in [27, 17, 33] {
                        let s = table.storage_overhead_bits(m).map_err(|e| e.to_string())?;
                        println!("   m={m:<3} {s}");
                    }
                    println!();
                    println!("note: rates are exact rationals rounded half-even to 4 decimals;");
                    println!("      e.g. R3(21) = 41/48 = 0.854166... prints as 0.8542.");
                }
                FormatArg::Csv => {
                    print!("{}", rt.to_csv());
                    println!("m,adder_bits,m_prime,adder_bits_III");
                    for (&m, &mp) in ms[..].iter().zip(&mps) {
                        let a = table.adder_size_bits(m).map_err(|e| e.to_string())?;
                        let b = table.adder_size_bits(3 * mp).map_err(|e| e.to_string())?;
                        println!("{m},{a},{mp},{b}");
                    }
                    println!("m,storage_bits");
                    for m in [27, 17, 33] {
                        println!("{m},{}", table.storage_overhead_bits(m).map_err(|e| e.to_string())?);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Capacity { q, ell } => {
            let beta = beta_max(q, ell);
            let beta_pi = dominant_eigenvalue(&fstd_adjacency(q, ell), 1e-12);
            println!("q={q} ell={ell}");
            println!("beta_max={beta:.6} (power iteration {beta_pi:.6})");
            println!("capacity={:.6}", capacity(q, ell));
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds { mprime, m, p, trials, seed, output } => {
            let grid = if p.is_empty() { log_spaced_grid(1e-3, 0.2, 40) } else { p };
            let configs: Vec<(usize, usize)> = match (mprime, m) {
                (Some(mp), Some(m)) => vec![(mp, m)],
                (None, None) => vec![(13, 21), (21, 33)],
                _ => return Err("--mprime and --m must be given together".into()),
            };
            let mut out = String::new();
            for (mp, m) in configs {
                out.push_str(&format!("# scheme III m'={mp} (m={}) vs scheme II-B m={m}\n", 3 * mp));
                let mc_rates = if trials > 0 {
                    let mut iii = Vec::new();
                    let mut iib = Vec::new();
                    for &pp in &grid {
                        iii.push(mc_rate(BridgeScheme::III, 3 * mp, pp, trials, seed)?);
                        iib.push(mc_rate(BridgeScheme::IIB, m, pp, trials, seed)?);
                    }
                    Some((iii, iib))
                } else {
                    None
                };
                let csv = match &mc_rates {
                    Some((iii, iib)) => {
                        bound_curves_csv(mp, m, &grid, Some((iii, iib))).map_err(|e| e.to_string())?
                    }
                    None => bound_curves_csv(mp, m, &grid, None).map_err(|e| e.to_string())?,
                };
                out.push_str(&csv);
            }
            write_output(&output, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate { stream, p, trials, seed } => {
            let codec = stream.codec()?;
            let config = *codec.config();
            let stats = monte_carlo_detection(&config, p, trials, seed).map_err(|e| e.to_string())?;
            let m = config.params.m;
            let analytic = match config.scheme {
                BridgeScheme::IIB => Some(bound_ii_full(m + 2, p).map_err(|e| e.to_string())?),
                BridgeScheme::III => Some(p_un_scheme_iii(m / 3, p).map_err(|e| e.to_string())?),
                _ => None,
            };
            println!(
                "scheme={} m={m} p={p} seed={seed} {}",
                config.scheme,
                stats.to_record()
            );
            if let Some(bound) = analytic {
                println!("analytic_bound={bound:.6e}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Rll { m, ell, rank, unrank } => {
            let code = RllCode::new(m, ell).map_err(|e| e.to_string())?;
            println!(
                "rll n={} zero_run_limit={} cardinality={}",
                code.codeword_len(),
                code.zero_run_limit(),
                code.cardinality()
            );
            if let Some(word) = rank {
                let v: Vec<u8> = word
                    .trim()
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(0u8),
                        '1' => Ok(1u8),
                        other => Err(format!("'{other}' is not a bit")),
                    })
                    .collect::<Result<_, _>>()?;
                println!("rank={}", code.rank(&v).map_err(|e| e.to_string())?);
            }
            if let Some(index) = unrank {
                let idx = index
                    .trim()
                    .parse::<num_bigint::BigUint>()
                    .map_err(|_| format!("'{index}' is not a decimal index"))?;
                let v = code.unrank(&idx).map_err(|e| e.to_string())?;
                let text: String = v.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect();
                println!("word={text}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn mc_rate(scheme: BridgeScheme, m: usize, p: f64, trials: u64, seed: u64) -> Result<f64, String> {
    let config = StreamConfig::new(
        CodeParams::new(4, 3, m).map_err(|e| e.to_string())?,
        scheme,
        false,
    )
    .map_err(|e| e.to_string())?;
    let stats = monte_carlo_detection(&config, p, trials, seed).map_err(|e| e.to_string())?;
    Ok(stats.undetected_per_frame())
}
