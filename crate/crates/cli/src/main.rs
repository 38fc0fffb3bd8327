use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nagell::transport::PipelineTrace;

mod doc;
mod error;
mod plot;

use doc::{parse_point2, parse_point3, FamilyInstance, InstanceDocument, PointDocument, TraceDocument};
use error::CliError;
use plot::Window;

#[derive(Parser)]
#[command(name = "nagell", version, about = "Quadric intersections and plane cubics to Weierstrass form")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the whole pipeline and print the trace.
    Transform {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Carry a point between the quadric intersection and a cubic.
    MapPoint {
        #[command(flatten)]
        instance: InstanceArgs,
        /// "a,b,c,d" forward, "a,b,c" backward.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_enum, default_value_t = Direction::Forward)]
        direction: Direction,
        /// Cubic C_(r) to map to or from; the final curve by default.
        #[arg(long)]
        stage: Option<u8>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Write affine and projective views of one cubic as SVG.
    Plot {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value_t = 0)]
        stage: u8,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// x0,x1,y0,y1 for the affine view.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
    },
    /// Shorthand for `transform` on one of the built-in families.
    Family {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance document (JSON).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    family: Option<Family>,
    #[arg(long = "M", allow_negative_numbers = true)]
    big_m: Option<i64>,
    #[arg(long = "N", allow_negative_numbers = true)]
    big_n: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    k: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    l: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    m: Option<i64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Euler,
    Klm,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    Forward,
    Backward,
}

impl InstanceArgs {
    fn document(&self) -> Result<InstanceDocument, CliError> {
        let family_flags = [self.big_m, self.big_n, self.k, self.l, self.m].iter().any(Option::is_some);
        match (&self.input, self.family) {
            (Some(_), Some(_)) => Err(CliError::Usage("give either --input or --family, not both".into())),
            (Some(_), None) if family_flags => Err(CliError::Usage("family parameters need --family".into())),
            (Some(path), None) => InstanceDocument::parse(&fs::read_to_string(path)?),
            (None, None) => Err(CliError::Usage("an instance is required: --input FILE or --family".into())),
            (None, Some(Family::Euler)) => match (self.big_m, self.big_n, self.k, self.l, self.m) {
                (Some(m), Some(n), None, None, None) => Ok(InstanceDocument::Family(FamilyInstance::Euler { m, n })),
                _ => Err(CliError::Usage("--family euler takes exactly --M and --N".into())),
            },
            (None, Some(Family::Klm)) => match (self.big_m, self.big_n, self.k, self.l, self.m) {
                (None, None, Some(k), Some(l), Some(m)) => Ok(InstanceDocument::Family(FamilyInstance::Klm { k, l, m })),
                _ => Err(CliError::Usage("--family klm takes exactly --k, --l and --m".into())),
            },
        }
    }
}

fn build(instance: &InstanceArgs) -> Result<(InstanceDocument, PipelineTrace), CliError> {
    let doc = instance.document()?;
    let (a, b, x) = doc.resolve()?;
    let trace = PipelineTrace::build(&a, &b, &x)?;
    Ok((doc, trace))
}

fn check_stage(trace: &PipelineTrace, stage: u8) -> Result<(), CliError> {
    match trace.cubic.stage(stage) {
        Some(_) => Ok(()),
        None => Err(CliError::Usage(format!("this trace has no cubic C({stage})"))),
    }
}

fn transform(instance: &InstanceArgs, format: Format) -> Result<String, CliError> {
    let (doc, trace) = build(instance)?;
    let trace_doc = TraceDocument::new(doc, &trace);
    match format {
        Format::Json => Ok(trace_doc.to_json()),
        Format::Text => Ok(trace_doc.to_text()),
        Format::Svg => Err(CliError::Usage("transform writes json or text; use plot for svg".into())),
    }
}

fn map_point(
    instance: &InstanceArgs,
    point: &str,
    direction: Direction,
    stage: Option<u8>,
    format: Format,
) -> Result<String, CliError> {
    if format == Format::Svg {
        return Err(CliError::Usage("map-point writes json or text".into()));
    }
    let (_, trace) = build(instance)?;
    if let Some(r) = stage {
        check_stage(&trace, r)?;
    }
    let (input, output) = match direction {
        Direction::Forward => {
            let p = parse_point3(point)?;
            let q = trace.forward_to(&p, stage)?;
            (p.to_string(), q.to_string())
        }
        Direction::Backward => {
            let p = parse_point2(point)?;
            let q = trace.backward_from(&p, stage)?;
            (p.to_string(), q.to_string())
        }
    };
    if format == Format::Text {
        return Ok(format!("{output}\n"));
    }
    let direction = match direction {
        Direction::Forward => "forward",
        Direction::Backward => "backward",
    };
    let doc = PointDocument { direction: direction.into(), stage, input, output };
    Ok(serde_json::to_string_pretty(&doc).expect("documents always serialize") + "\n")
}

fn plot(instance: &InstanceArgs, stage: u8, out: &Path, window: Option<&str>, format: Format) -> Result<String, CliError> {
    if format != Format::Svg {
        return Err(CliError::Usage("plot writes svg only".into()));
    }
    let window = window
        .map(|w| Window::parse(w).ok_or_else(|| CliError::Parse(format!("bad window {w:?}, expected x0,x1,y0,y1"))))
        .transpose()?;
    let (_, trace) = build(instance)?;
    check_stage(&trace, stage)?;
    let (cubic, point) = trace.cubic.stage(stage).expect("checked");
    let marked = [point.clone()];
    let window = window.unwrap_or_else(|| plot::affine_window(&marked));
    fs::create_dir_all(out)?;
    let affine = out.join(format!("stage-{stage}-affine.svg"));
    let projective = out.join(format!("stage-{stage}-projective.svg"));
    fs::write(&affine, plot::affine_svg(cubic, &marked, window, &format!("C({stage}), affine view")))?;
    fs::write(&projective, plot::projective_svg(cubic, &marked, &format!("C({stage}), projective view")))?;
    Ok(format!("{}\n{}\n", affine.display(), projective.display()))
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Transform { instance, format } => transform(&instance, format),
        Command::Family { instance, format } => {
            if instance.family.is_none() {
                return Err(CliError::Usage("family needs --family euler|klm".into()));
            }
            transform(&instance, format)
        }
        Command::MapPoint { instance, point, direction, stage, format } => {
            map_point(&instance, &point, direction, stage, format)
        }
        Command::Plot { instance, stage, out, window, format } => {
            plot(&instance, stage, &out, window.as_deref(), format)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
