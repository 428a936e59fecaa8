//! Command-line front end: argument grammar, validation and report output.

use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nksl2r_core::catalog::{
    angle_params, catalog_entry, literal_type_i_discriminant, select_entry, solve_congruency, type_table,
    CatalogName, Params, CONGRUENCY_NOTE,
};
use nksl2r_core::report::Document;
use nksl2r_core::verifier::{
    check_identity_suite, check_isometry_suite, frame_connection_table, frame_connection_table_printed,
    table_metric_residual, table_rows, verify_entry, Check, TABLE_COLUMN_LABELS, TABLE_ROW_LABELS,
};
use nksl2r_core::Error;
use serde_json::{json, Value};

pub const DEFAULT_SEED: u64 = 42;
pub const SEED_ENV: &str = "NKSL2R_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "nksl2r", version, about = "Almost complex surfaces in the nearly Kähler SL2R x SL2R")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Clone, Copy)]
#[group(multiple = false)]
pub struct Angle {
    /// Angle in radians
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    /// Angle in degrees
    #[arg(long, allow_hyphen_values = true)]
    pub phi_deg: Option<f64>,
}

impl Angle {
    fn radians(&self) -> Option<f64> {
        self.phi.or(self.phi_deg.map(|d| d * PI / 180.0))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Random sweep of the algebraic identities and the isometry layer
    Identities {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Run every check the catalog claims for an entry
    Verify {
        entry: String,
        #[command(flatten)]
        angle: Angle,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<f64>,
        #[arg(long, default_value = "5x5", value_parser = parse_grid)]
        grid: (usize, usize),
        #[arg(long, default_value_t = 1e-5)]
        h: f64,
    },
    /// Types, congruency parameters and catalog entry for an angle
    Classify {
        #[command(flatten)]
        angle: Angle,
    },
    /// Factor types over a degree grid of angles
    Table {
        #[arg(long, default_value_t = 30.0)]
        step_deg: f64,
    },
    /// Closed-form connection coefficients over the adapted frame
    Connection {
        #[command(flatten)]
        angle: Angle,
    },
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| format!("grid must look like NxM, got {s:?}"))?;
    let n = a.trim().parse::<usize>().map_err(|e| e.to_string())?;
    let m = b.trim().parse::<usize>().map_err(|e| e.to_string())?;
    Ok((n, m))
}

/// Validated settings of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct CliConfig {
    pub command: &'static str,
    pub entry: Option<CatalogName>,
    pub params: Params,
    pub phi: Option<f64>,
    pub step_deg: Option<f64>,
    pub grid: (usize, usize),
    pub h: f64,
    pub seed: u64,
    pub samples: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

impl CliConfig {
    pub fn from_cli(cli: &Cli, env_seed: Option<&str>) -> Result<Self, Error> {
        let seed = match env_seed {
            Some(s) => s.trim().parse::<u64>().map_err(|_| invalid(format!("{SEED_ENV} must be an integer, got {s:?}")))?,
            None => DEFAULT_SEED,
        };
        let mut c = CliConfig {
            command: "",
            entry: None,
            params: Params::default(),
            phi: None,
            step_deg: None,
            grid: (5, 5),
            h: 1e-5,
            seed,
            samples: 0,
            format: cli.format,
            out: cli.out.clone(),
        };
        match &cli.command {
            Command::Identities { seed, samples } => {
                c.command = "identities";
                c.seed = seed.unwrap_or(c.seed);
                if *samples == 0 {
                    return Err(invalid("--samples must be at least 1"));
                }
                c.samples = *samples;
            }
            Command::Verify { entry, angle, lambda, alpha, beta, grid, h } => {
                c.command = "verify";
                c.entry = Some(entry.parse()?);
                c.phi = angle.radians();
                c.params = Params { phi: c.phi, lambda: *lambda, alpha: *alpha, beta: *beta };
                if grid.0 < 3 || grid.1 < 3 {
                    return Err(invalid(format!("grid must be at least 3x3, got {}x{}", grid.0, grid.1)));
                }
                if !(*h > 0.0 && *h <= 1e-2) {
                    return Err(invalid(format!("h must lie in (0, 1e-2], got {h}")));
                }
                c.grid = *grid;
                c.h = *h;
            }
            Command::Classify { angle } | Command::Connection { angle } => {
                c.command = if matches!(cli.command, Command::Classify { .. }) { "classify" } else { "connection" };
                c.phi = Some(angle.radians().ok_or_else(|| invalid("--phi or --phi-deg is required"))?);
            }
            Command::Table { step_deg } => {
                c.command = "table";
                let n = 360.0 / step_deg;
                if !(*step_deg > 0.0) || (n - n.round()).abs() > 1e-9 {
                    return Err(invalid(format!("--step-deg must divide 360, got {step_deg}")));
                }
                c.step_deg = Some(*step_deg);
            }
        }
        for v in [c.phi, c.params.lambda, c.params.alpha, c.params.beta].into_iter().flatten() {
            if !v.is_finite() {
                return Err(invalid("numeric arguments must be finite"));
            }
        }
        Ok(c)
    }

    fn to_json(&self) -> Value {
        let mut v = json!({ "format": match self.format { Format::Json => "json", Format::Csv => "csv" } });
        let o = v.as_object_mut().expect("object literal");
        match self.command {
            "identities" => {
                o.insert("seed".into(), json!(self.seed));
                o.insert("samples".into(), json!(self.samples));
            }
            "verify" => {
                o.insert("entry".into(), json!(self.entry.map(|e| e.as_str())));
                o.insert("params".into(), json!(self.params));
                o.insert("grid".into(), json!([self.grid.0, self.grid.1]));
                o.insert("h".into(), json!(self.h));
            }
            "table" => {
                o.insert("step_deg".into(), json!(self.step_deg));
            }
            _ => {
                o.insert("phi".into(), json!(self.phi));
            }
        }
        v
    }
}

/// Execute a validated configuration. Ok(doc) carries the verdict.
pub fn execute(c: &CliConfig) -> Result<Document, Error> {
    let config = c.to_json();
    match c.command {
        "identities" => {
            let mut rep = check_identity_suite(c.seed, c.samples)?;
            rep.absorb(check_isometry_suite(c.seed.wrapping_add(1), c.samples)?);
            Ok(Document::from_report("identities", config, &rep))
        }
        "verify" => {
            let name = c.entry.expect("verify has an entry");
            let entry = catalog_entry(name, &c.params)?;
            let rep = verify_entry(&entry, c.grid, c.h)?;
            Ok(Document::from_report("verify", config, &rep))
        }
        "classify" => Ok(classify(c.phi.expect("angle validated"), config)),
        "table" => {
            let rows = table_rows(c.step_deg.expect("step validated"))?;
            Ok(Document::new("table", config).with_data(json!(rows)))
        }
        "connection" => {
            let phi = c.phi.expect("angle validated");
            let t = frame_connection_table(phi);
            let printed = frame_connection_table_printed(phi);
            let mut d = Document::new("connection", config);
            d.checks.push(Check::new("table_metric_compatibility", table_metric_residual(&t), 1e-12, 1));
            d.verdict = d.checks.iter().all(|k| k.pass);
            d.notes.push(format!(
                "rows nabla_X G(X,PX) and nabla_JX JG(X,PX): JX coefficient printed as {:.6} and {:.6}; metric compatibility forces {:.6} and {:.6}",
                printed.rows[4][1], printed.rows[11][1], t.rows[4][1], t.rows[11][1]
            ));
            let rows: Vec<Value> = TABLE_ROW_LABELS
                .iter()
                .zip(t.rows.iter())
                .map(|(label, r)| {
                    let mut m = serde_json::Map::new();
                    m.insert("derivative".into(), json!(label));
                    for (col, v) in TABLE_COLUMN_LABELS.iter().zip(r) {
                        m.insert((*col).into(), json!(v));
                    }
                    Value::Object(m)
                })
                .collect();
            Ok(d.with_data(json!(rows)))
        }
        other => Err(invalid(format!("unknown command {other}"))),
    }
}

fn classify(phi: f64, config: Value) -> Document {
    let ap = angle_params(phi);
    let (tp, tq) = type_table(phi);
    let mut d = Document::new("classify", config);
    let congruency = match solve_congruency(phi) {
        Ok(s) => json!(s),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let entry = select_entry(phi);
    d.notes.push(CONGRUENCY_NOTE.to_string());
    d.notes.push(format!(
        "discriminant of the uncorrected form at psi: {:.6}, at xi: {:.6}",
        literal_type_i_discriminant(ap.psi),
        literal_type_i_discriminant(ap.xi)
    ));
    if entry.is_none() {
        d.notes.push("no catalog entry realizes this angle".into());
    }
    d.with_data(json!({
        "phi": ap.phi,
        "psi": ap.psi,
        "xi": ap.xi,
        "types": [tp, tq],
        "congruency": congruency,
        "entry": entry.map(|e| e.as_str()),
    }))
}

/// Parse, execute and write; returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let env_seed = std::env::var(SEED_ENV).ok();
    let cfg = match CliConfig::from_cli(&cli, env_seed.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let doc = match execute(&cfg) {
        Ok(d) => d,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let text = match cfg.format {
        Format::Json => doc.to_json(),
        Format::Csv => doc.to_csv(),
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let written = match &cfg.out {
        Some(p) => std::fs::write(p, text.as_bytes()),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write report: {e}");
        return 2;
    }
    if doc.verdict {
        0
    } else {
        1
    }
}
