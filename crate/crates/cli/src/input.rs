//! Argument and curve-file handling. A job can come from flags, from a
//! key = value file, or both; flags win where both supply a value.

use std::collections::HashMap;
use std::path::PathBuf;

use clap::Parser;
use hyperzeta::{BasisKind, CurveSpec, Error, GuardOverride, Result};

#[derive(Parser, Debug, Default)]
#[command(
    name = "hyperzeta",
    about = "Zeta function and Jacobian order of a hyperelliptic curve y^2 = P(x) over F_q, q = p^n, p odd",
    long_about = None
)]
pub struct RawArgs {
    /// Odd prime characteristic
    #[arg(long)]
    pub p: Option<u64>,

    /// Extension degree n of the base field, q = p^n (default 1)
    #[arg(long)]
    pub n: Option<usize>,

    /// Extension modulus: n+1 comma-separated integers, constant term first
    #[arg(long)]
    pub modulus: Option<String>,

    /// Coefficients of P(x), constant term first; for n > 1 each
    /// coefficient is a bracketed group of n F_p coordinates.
    #[arg(
        long = "P",
        value_name = "COEFFS",
        help = "Coefficients of P(x), constant first: \"0,-1,0,1\"; for n > 1 each coefficient is bracketed F_p coordinates: \"[1,0],[0,1],[0,0],[1]\""
    )]
    pub poly: Option<String>,

    /// Target digits override (refused below the uniqueness requirement)
    #[arg(long)]
    pub precision: Option<u32>,

    /// Guard digits: "+k" adds to the formula value, a bare number is
    /// absolute (refused below the formula value)
    #[arg(long)]
    pub guard: Option<String>,

    /// Series truncation override (experiments only, >= 1)
    #[arg(long)]
    pub trunc: Option<u32>,

    /// Basis differentials: y1 for dx/y (default) or y3 for dx/y^3
    #[arg(long)]
    pub basis: Option<String>,

    /// Compare counts against enumeration for extensions 1..=M
    #[arg(long, value_name = "M")]
    pub verify: Option<u32>,

    /// Output format: text (default) or json-like
    #[arg(long)]
    pub format: Option<String>,

    /// Worker threads (default: available parallelism)
    #[arg(long)]
    pub threads: Option<usize>,

    /// Read job settings from key = value lines; flags override the file
    #[arg(long, value_name = "PATH")]
    pub curve_file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    JsonLike,
}

#[derive(Debug)]
pub struct JobConfig {
    pub spec: CurveSpec,
    pub precision: Option<u32>,
    pub guard: GuardOverride,
    pub trunc: Option<u32>,
    pub basis: BasisKind,
    pub verify_depth: u32,
    pub format: Format,
    pub threads: Option<usize>,
}

impl JobConfig {
    pub fn resolve(args: RawArgs) -> Result<JobConfig> {
        let mut merged = args;
        if let Some(path) = merged.curve_file.clone() {
            let text = std::fs::read_to_string(&path).map_err(|e| Error::Parse {
                position: path.display().to_string(),
                message: e.to_string(),
            })?;
            let file = parse_curve_file(&text)?;
            merge_missing(&mut merged, file);
        }

        let p = merged.p.ok_or_else(|| missing("p"))?;
        let n = merged.n.unwrap_or(1);
        let poly_text = merged.poly.as_deref().ok_or_else(|| missing("P"))?;
        let coeffs = parse_coefficients(poly_text, n)?;
        let modulus = match merged.modulus.as_deref() {
            None => None,
            Some(text) => Some(parse_int_list(text, "modulus")?),
        };
        let spec = CurveSpec { p, n, modulus, coeffs };

        let guard = match merged.guard.as_deref() {
            None => GuardOverride::None,
            Some(text) => parse_guard(text)?,
        };
        let basis = match merged.basis.as_deref() {
            None | Some("y1") => BasisKind::YPowerOne,
            Some("y3") => BasisKind::YPowerThree,
            Some(other) => {
                return Err(Error::Parse {
                    position: "basis".into(),
                    message: format!("expected y1 or y3, got {:?}", other),
                })
            }
        };
        let format = match merged.format.as_deref() {
            None | Some("text") => Format::Text,
            Some("json-like") => Format::JsonLike,
            Some(other) => {
                return Err(Error::Parse {
                    position: "format".into(),
                    message: format!("expected text or json-like, got {:?}", other),
                })
            }
        };
        Ok(JobConfig {
            spec,
            precision: merged.precision,
            guard,
            trunc: merged.trunc,
            basis,
            verify_depth: merged.verify.unwrap_or(0),
            format,
            threads: merged.threads,
        })
    }
}

fn missing(key: &str) -> Error {
    Error::Parse { position: key.into(), message: "required value not supplied".into() }
}

fn merge_missing(into: &mut RawArgs, from: RawArgs) {
    macro_rules! take {
        ($field:ident) => {
            if into.$field.is_none() {
                into.$field = from.$field;
            }
        };
    }
    take!(p);
    take!(n);
    take!(modulus);
    take!(poly);
    take!(precision);
    take!(guard);
    take!(trunc);
    take!(basis);
    take!(verify);
    take!(format);
    take!(threads);
}

fn parse_curve_file(text: &str) -> Result<RawArgs> {
    let mut map: HashMap<&str, String> = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Parse {
                position: format!("line {}", lineno + 1),
                message: "expected key = value".into(),
            });
        };
        map.insert_checked(key.trim(), value.trim().to_string(), lineno + 1)?;
    }
    let mut args = RawArgs::default();
    let parse_num = |v: &str, line: &str| -> Result<u64> {
        v.parse().map_err(|_| Error::Parse {
            position: line.to_string(),
            message: format!("not an integer: {:?}", v),
        })
    };
    for (key, value) in map {
        match key {
            "p" => args.p = Some(parse_num(&value, "p")?),
            "n" => args.n = Some(parse_num(&value, "n")? as usize),
            "modulus" => args.modulus = Some(value),
            "P" => args.poly = Some(value),
            "precision" => args.precision = Some(parse_num(&value, "precision")? as u32),
            "guard" => args.guard = Some(value),
            "trunc" => args.trunc = Some(parse_num(&value, "trunc")? as u32),
            "basis" => args.basis = Some(value),
            "verify" => args.verify = Some(parse_num(&value, "verify")? as u32),
            "format" => args.format = Some(value),
            "threads" => args.threads = Some(parse_num(&value, "threads")? as usize),
            other => {
                return Err(Error::Parse {
                    position: other.to_string(),
                    message: "unknown key".into(),
                })
            }
        }
    }
    Ok(args)
}

trait InsertChecked<'a> {
    fn insert_checked(&mut self, key: &'a str, value: String, lineno: usize) -> Result<()>;
}

impl<'a> InsertChecked<'a> for HashMap<&'a str, String> {
    fn insert_checked(&mut self, key: &'a str, value: String, lineno: usize) -> Result<()> {
        if self.insert(key, value).is_some() {
            return Err(Error::Parse {
                position: format!("line {}", lineno),
                message: format!("duplicate key {:?}", key),
            });
        }
        Ok(())
    }
}

fn parse_guard(text: &str) -> Result<GuardOverride> {
    let t = text.trim();
    let (relative, digits) = match t.strip_prefix('+') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let value: u32 = digits.parse().map_err(|_| Error::Parse {
        position: "guard".into(),
        message: format!("expected a digit count or +k, got {:?}", text),
    })?;
    Ok(if relative { GuardOverride::Relative(value) } else { GuardOverride::Absolute(value) })
}

fn parse_int_list(text: &str, what: &str) -> Result<Vec<i64>> {
    text.split(',')
        .enumerate()
        .map(|(i, tok)| {
            tok.trim().parse().map_err(|_| Error::Parse {
                position: format!("{} entry {}", what, i + 1),
                message: format!("not an integer: {:?}", tok.trim()),
            })
        })
        .collect()
}

/// "0,-1,0,1" for prime fields; "[a0,a1],[b0,b1],..." coordinate groups
/// for extensions.
pub fn parse_coefficients(text: &str, n: usize) -> Result<Vec<Vec<i64>>> {
    let t = text.trim();
    if !t.starts_with('[') {
        return Ok(parse_int_list(t, "P")?.into_iter().map(|v| vec![v]).collect());
    }
    let mut out = Vec::new();
    let mut rest = t;
    let mut index = 0;
    while !rest.is_empty() {
        index += 1;
        if !rest.starts_with('[') {
            return Err(Error::Parse {
                position: format!("P coefficient {}", index),
                message: "expected '['".into(),
            });
        }
        let close = rest.find(']').ok_or_else(|| Error::Parse {
            position: format!("P coefficient {}", index),
            message: "missing ']'".into(),
        })?;
        let inner = &rest[1..close];
        let coords = parse_int_list(inner, "P")?;
        if coords.len() > n {
            return Err(Error::Parse {
                position: format!("P coefficient {}", index),
                message: format!("{} coordinates for extension degree {}", coords.len(), n),
            });
        }
        out.push(coords);
        rest = rest[close + 1..].trim_start();
        if let Some(stripped) = rest.strip_prefix(',') {
            rest = stripped.trim_start();
        } else if !rest.is_empty() {
            return Err(Error::Parse {
                position: format!("P coefficient {}", index),
                message: "expected ',' between coefficients".into(),
            });
        }
    }
    Ok(out)
}
