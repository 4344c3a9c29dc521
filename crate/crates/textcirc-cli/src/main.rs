//! Command-line front end: compile hybrid text to circuits, translate texts,
//! check cross-language equivalence, and sample/round-trip circuits.
//!
//! Exit codes: 0 success, 1 semantic failure (inequivalence, round-trip
//! failure), 2 usage or format error.

use std::fs;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use textcirc::compile::compile_text;
use textcirc::fixtures;
use textcirc::generate::{circuit_to_text, roundtrip, sample_circuit, RealizePolicy, SampleParams};
use textcirc::grammar::Language;
use textcirc::hybrid::HybridText;
use textcirc::io::{
    parse_hybrid_text, parse_lexicon, render_ascii_with, render_dot, serialize_hybrid_text,
    AsciiStyle,
};
use textcirc::translate::{translate_text, Direction, Lexicon};

#[derive(Parser)]
#[command(
    name = "textcirc",
    version,
    about = "Hybrid-grammar text to text-circuit compiler"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for equiv and roundtrip.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LangArg {
    En,
    Ur,
}

impl From<LangArg> for Language {
    fn from(value: LangArg) -> Language {
        match value {
            LangArg::En => Language::English,
            LangArg::Ur => Language::Urdu,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RenderArg {
    Dot,
    Ascii,
    None,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DirArg {
    E2u,
    U2e,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a hybrid-text file to its canonical circuit.
    Compile {
        text_file: PathBuf,
        /// Input language; optional when the file carries an @lang line.
        #[arg(long, value_enum)]
        lang: Option<LangArg>,
        /// Write the canonical circuit to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print a rendering instead of the canonical form.
        #[arg(long, value_enum, default_value_t = RenderArg::None)]
        render: RenderArg,
    },
    /// Translate a hybrid-text file through a lexicon.
    Translate {
        text_file: PathBuf,
        /// Lexicon file (english<TAB>urdu<TAB>POS); defaults to the built-in
        /// fixture lexicon.
        #[arg(long)]
        lexicon: Option<PathBuf>,
        #[arg(long, value_enum)]
        dir: DirArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that an English and an Urdu text compile to the same circuit up
    /// to the dictionary. Exit 0 iff equal.
    Equiv {
        text_file_en: PathBuf,
        text_file_ur: PathBuf,
        #[arg(long)]
        lexicon: Option<PathBuf>,
    },
    /// Sample a random circuit and realize it as text.
    Sample {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        wires: usize,
        #[arg(long, default_value_t = 5)]
        elements: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = LangArg::En)]
        lang: LangArg,
        /// Realization policy: `pronoun`, `repeat`, `threshold=N`, each
        /// optionally followed by `,fuse`.
        #[arg(long, default_value = "pronoun")]
        policy: String,
    },
    /// Sample many circuits, realize and recompile each, and report.
    /// Exit 0 iff every round trip returns the identical canonical circuit.
    Roundtrip {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, value_enum, default_value_t = LangArg::En)]
        lang: LangArg,
        #[arg(long, default_value = "pronoun")]
        policy: String,
        #[arg(long, default_value_t = 5)]
        wires: usize,
        #[arg(long, default_value_t = 8)]
        elements: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Compile {
            text_file,
            lang,
            out,
            render,
        } => cmd_compile(&text_file, lang, out.as_deref(), render),
        Command::Translate {
            text_file,
            lexicon,
            dir,
            out,
        } => cmd_translate(&text_file, lexicon.as_deref(), dir, out.as_deref()),
        Command::Equiv {
            text_file_en,
            text_file_ur,
            lexicon,
        } => cmd_equiv(&text_file_en, &text_file_ur, lexicon.as_deref(), cli.format),
        Command::Sample {
            seed,
            wires,
            elements,
            depth,
            lang,
            policy,
        } => cmd_sample(seed, wires, elements, depth, lang.into(), &policy),
        Command::Roundtrip {
            seed,
            count,
            lang,
            policy,
            wires,
            elements,
            depth,
        } => {
            let options = RoundtripOptions {
                seed,
                count,
                language: lang.into(),
                wires,
                elements,
                depth,
            };
            cmd_roundtrip(options, &policy, cli.format)
        }
    }
}

fn read_text_file(path: &Path, lang: Option<LangArg>) -> Result<HybridText, String> {
    let source = fs::read_to_string(path).map_err(|err| format!("{}: {err}", path.display()))?;
    let has_lang_line = source
        .lines()
        .any(|line| line.trim_start().starts_with("@lang"));
    let default = match lang {
        Some(lang) => lang.into(),
        None if has_lang_line => Language::English, // overridden by the file
        None => {
            return Err(format!(
                "{}: no @lang line; pass --lang en|ur",
                path.display()
            ))
        }
    };
    parse_hybrid_text(&source, default).map_err(|err| format!("{}:{err}", path.display()))
}

fn load_lexicon(path: Option<&Path>) -> Result<Lexicon, String> {
    match path {
        None => Ok(fixtures::lexicon().clone()),
        Some(path) => {
            let source =
                fs::read_to_string(path).map_err(|err| format!("{}: {err}", path.display()))?;
            parse_lexicon(&source).map_err(|err| format!("{}:{err}", path.display()))
        }
    }
}

fn color_enabled() -> bool {
    match std::env::var("TEXTCIRC_COLOR").as_deref() {
        Ok("always") => true,
        Ok("never") => false,
        _ => std::io::stdout().is_terminal(),
    }
}

fn cmd_compile(
    text_file: &Path,
    lang: Option<LangArg>,
    out: Option<&Path>,
    render: RenderArg,
) -> Result<ExitCode, String> {
    let text = read_text_file(text_file, lang)?;
    let circuit = compile_text(&text).map_err(|err| err.to_string())?;
    let canonical = circuit.canonicalize().map_err(|err| err.to_string())?;
    if let Some(out) = out {
        fs::write(out, format!("{canonical}\n"))
            .map_err(|err| format!("{}: {err}", out.display()))?;
    }
    match render {
        RenderArg::None => println!("{canonical}"),
        RenderArg::Dot => print!("{}", render_dot(&circuit).map_err(|err| err.to_string())?),
        RenderArg::Ascii => print!(
            "{}",
            render_ascii_with(
                &circuit,
                AsciiStyle {
                    color: color_enabled()
                }
            )
            .map_err(|err| err.to_string())?
        ),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_translate(
    text_file: &Path,
    lexicon: Option<&Path>,
    dir: DirArg,
    out: Option<&Path>,
) -> Result<ExitCode, String> {
    let direction = match dir {
        DirArg::E2u => Direction::EnglishToUrdu,
        DirArg::U2e => Direction::UrduToEnglish,
    };
    let text = read_text_file(
        text_file,
        Some(match direction.source() {
            Language::English => LangArg::En,
            Language::Urdu => LangArg::Ur,
        }),
    )?;
    if text.language != direction.source() {
        return Err(format!(
            "text is {} but --dir {direction} expects {}",
            text.language,
            direction.source()
        ));
    }
    let lexicon = load_lexicon(lexicon)?;
    let translated = translate_text(&text, &lexicon, direction).map_err(|err| err.to_string())?;
    let serialized = serialize_hybrid_text(&translated);
    match out {
        Some(out) => {
            fs::write(out, serialized).map_err(|err| format!("{}: {err}", out.display()))?
        }
        None => print!("{serialized}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_equiv(
    en_file: &Path,
    ur_file: &Path,
    lexicon: Option<&Path>,
    format: OutputFormat,
) -> Result<ExitCode, String> {
    let english = read_text_file(en_file, Some(LangArg::En))?;
    let urdu = read_text_file(ur_file, Some(LangArg::Ur))?;
    if english.language != Language::English || urdu.language != Language::Urdu {
        return Err("equiv expects an English file then an Urdu file".into());
    }
    let lexicon = load_lexicon(lexicon)?;
    let circuit_en =
        compile_text(&english).map_err(|err| format!("{}: {err}", en_file.display()))?;
    let circuit_ur = compile_text(&urdu).map_err(|err| format!("{}: {err}", ur_file.display()))?;
    let mapped = circuit_en
        .map_labels(&lexicon, Direction::EnglishToUrdu)
        .map_err(|err| err.to_string())?;
    let canonical_en = mapped.canonicalize().map_err(|err| err.to_string())?;
    let canonical_ur = circuit_ur.canonicalize().map_err(|err| err.to_string())?;
    let equal = canonical_en == canonical_ur;
    match format {
        OutputFormat::Structured => {
            println!("equal: {equal}");
            println!("canonical_en_mapped: {canonical_en}");
            println!("canonical_ur: {canonical_ur}");
        }
        OutputFormat::Text => {
            if equal {
                println!("equal: circuits agree up to the dictionary");
            } else {
                println!("not equal:");
                println!("  english (mapped): {canonical_en}");
                println!("  urdu:             {canonical_ur}");
            }
        }
    }
    Ok(if equal {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn parse_policy(raw: &str) -> Result<RealizePolicy, String> {
    let mut policy = RealizePolicy {
        pronoun_threshold: 0,
        fuse: false,
    };
    for part in raw.split(',') {
        match part.trim() {
            "pronoun" => policy.pronoun_threshold = usize::MAX,
            "repeat" => policy.pronoun_threshold = 0,
            "fuse" => policy.fuse = true,
            other => match other.strip_prefix("threshold=") {
                Some(value) => {
                    policy.pronoun_threshold = value
                        .parse()
                        .map_err(|_| format!("bad policy threshold {value:?}"))?;
                }
                None => return Err(format!("unknown policy part {other:?}")),
            },
        }
    }
    Ok(policy)
}

fn cmd_sample(
    seed: u64,
    wires: usize,
    elements: usize,
    depth: usize,
    language: Language,
    policy: &str,
) -> Result<ExitCode, String> {
    let policy = parse_policy(policy)?;
    let params = SampleParams::new(language, wires, elements, depth);
    let circuit = sample_circuit(seed, &params).map_err(|err| err.to_string())?;
    let text = circuit_to_text(&circuit, language, policy).map_err(|err| err.to_string())?;
    print!("{}", serialize_hybrid_text(&text));
    println!("---");
    println!("{}", circuit.canonicalize().map_err(|err| err.to_string())?);
    Ok(ExitCode::SUCCESS)
}

struct RoundtripOptions {
    seed: u64,
    count: u64,
    language: Language,
    wires: usize,
    elements: usize,
    depth: usize,
}

fn cmd_roundtrip(
    options: RoundtripOptions,
    policy: &str,
    format: OutputFormat,
) -> Result<ExitCode, String> {
    let policy = parse_policy(policy)?;
    let params = SampleParams::new(
        options.language,
        options.wires,
        options.elements,
        options.depth,
    );
    let mut ok = 0u64;
    let mut failed = 0u64;
    let mut first_failure: Option<(u64, String, String)> = None;
    for trial in 0..options.count {
        let trial_seed = options.seed.wrapping_add(trial);
        let circuit = sample_circuit(trial_seed, &params).map_err(|err| err.to_string())?;
        let report =
            roundtrip(&circuit, options.language, policy).map_err(|err| err.to_string())?;
        if report.ok {
            ok += 1;
        } else {
            failed += 1;
            if first_failure.is_none() {
                first_failure = Some((trial_seed, report.original, report.recompiled));
            }
        }
    }
    match format {
        OutputFormat::Structured => {
            println!("ok: {ok}");
            println!("fail: {failed}");
            if let Some((seed, original, recompiled)) = &first_failure {
                println!("first_fail_seed: {seed}");
                println!("first_fail_sampled: {original}");
                println!("first_fail_recompiled: {recompiled}");
            }
        }
        OutputFormat::Text => {
            println!(
                "roundtrip: {ok} ok, {failed} failed of {} ({})",
                options.count, options.language
            );
            if let Some((seed, original, recompiled)) = &first_failure {
                println!("first failure at seed {seed}:");
                println!("  sampled:    {original}");
                println!("  recompiled: {recompiled}");
            }
        }
    }
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
