//! CSV and JSON record files and the `key = value` sweep configuration.

use std::fs;
use std::io::Write;
use std::path::Path;

use gfn_core::rotor::{ResponseParams, RotorSpec};
use gfn_core::GOrder;

use crate::error::{Error, Result};
use crate::number::fmt_g17;
use crate::sweep::{SweepRecord, SweepSpec};

pub const CSV_HEADER: &str = "abscissa,re,im,err";

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// CSV text: header line plus one LF-terminated line per record.
pub fn to_csv(records: &[SweepRecord]) -> String {
    let mut out = String::with_capacity(80 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        let fields = [r.abscissa, r.re, r.im, r.err].map(fmt_g17);
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn to_json(records: &[SweepRecord]) -> String {
    let mut s = serde_json::to_string_pretty(records).expect("records serialize");
    s.push('\n');
    s
}

pub fn write_csv(records: &[SweepRecord], path: &Path) -> Result<()> {
    write_bytes(path, to_csv(records).as_bytes())
}

pub fn write_json(records: &[SweepRecord], path: &Path) -> Result<()> {
    write_bytes(path, to_json(records).as_bytes())
}

/// JSON when the path ends in `.json`, CSV otherwise.
pub fn write_records(records: &[SweepRecord], path: &Path) -> Result<()> {
    if path.extension().is_some_and(|e| e == "json") {
        write_json(records, path)
    } else {
        write_csv(records, path)
    }
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut file = fs::File::create(path).map_err(io_err(path))?;
    file.write_all(bytes).map_err(io_err(path))?;
    file.flush().map_err(io_err(path))
}

pub fn parse_csv(text: &str, path: &Path) -> Result<Vec<SweepRecord>> {
    let parse_err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == CSV_HEADER => {}
        _ => return Err(parse_err(1, format!("expected header `{CSV_HEADER}`"))),
    }
    let mut records = Vec::new();
    for (i, line) in lines {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(parse_err(
                i + 1,
                format!("expected 4 fields, found {}", fields.len()),
            ));
        }
        let mut v = [0.0; 4];
        for (slot, f) in v.iter_mut().zip(&fields) {
            *slot = f
                .parse()
                .map_err(|_| parse_err(i + 1, format!("`{f}` is not a number")))?;
        }
        records.push(SweepRecord {
            abscissa: v[0],
            re: v[1],
            im: v[2],
            err: v[3],
        });
    }
    Ok(records)
}

pub fn read_csv(path: &Path) -> Result<Vec<SweepRecord>> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_csv(&text, path)
}

pub fn read_config(path: &Path) -> Result<SweepSpec> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_config(&text, path)
}

/// Parses a flat `key = value` file whose keys mirror the CLI flags:
/// `kind` (`radial`, `phase` or `chi`), `m`, `theta`, `r`, `lo`, `hi`,
/// `steps`, `i1`, `i3`, `beta`, `tau`. Spectra may spell the bounds
/// `omega-lo` and `omega-hi`. `#` starts a comment.
pub fn parse_config(text: &str, path: &Path) -> Result<SweepSpec> {
    const KEYS: [&str; 13] = [
        "kind", "m", "theta", "r", "lo", "hi", "omega-lo", "omega-hi", "steps", "i1", "i3", "beta",
        "tau",
    ];
    let parse_err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let missing = |key: &str| Error::invalid(format!("{}: missing key `{key}`", path.display()));
    let mut entries: Vec<(&str, &str, usize)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| parse_err(i + 1, format!("expected `key = value`, found `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            return Err(parse_err(i + 1, format!("unknown key `{key}`")));
        }
        if let Some((_, _, first)) = entries.iter().find(|(k, _, _)| *k == key) {
            return Err(parse_err(
                i + 1,
                format!("key `{key}` already set on line {first}"),
            ));
        }
        entries.push((key, value, i + 1));
    }
    let text_of = |key: &str| {
        entries
            .iter()
            .find(|(k, _, _)| *k == key)
            .map(|&(_, v, l)| (v, l))
    };
    let number = |key: &str| -> Result<Option<f64>> {
        match text_of(key) {
            None => Ok(None),
            Some((v, line)) => match v.parse::<f64>() {
                Ok(x) if x.is_finite() => Ok(Some(x)),
                _ => Err(parse_err(
                    line,
                    format!("`{key}` needs a finite number, found `{v}`"),
                )),
            },
        }
    };
    let required = |key: &str| -> Result<f64> { number(key)?.ok_or_else(|| missing(key)) };
    let either = |a: &str, b: &str| -> Result<f64> {
        match (number(a)?, number(b)?) {
            (Some(x), None) | (None, Some(x)) => Ok(x),
            (Some(_), Some(_)) => Err(Error::invalid(format!(
                "{}: set only one of `{a}` and `{b}`",
                path.display()
            ))),
            (None, None) => Err(missing(a)),
        }
    };
    let integer = |key: &str| -> Result<u32> {
        let (v, line) = text_of(key).ok_or_else(|| missing(key))?;
        v.parse().map_err(|_| {
            parse_err(
                line,
                format!("`{key}` needs a non-negative integer, found `{v}`"),
            )
        })
    };
    let (kind, kind_line) = text_of("kind").ok_or_else(|| missing("kind"))?;
    let steps = integer("steps")? as usize;
    let spec = match kind {
        "radial" | "phase" => {
            let m = GOrder::new(integer("m")?)?;
            let (lo, hi) = (required("lo")?, required("hi")?);
            if kind == "radial" {
                SweepSpec::radial(m, required("theta")?, lo, hi, steps)
            } else {
                SweepSpec::phase(m, required("r")?, lo, hi, steps)
            }
        }
        "chi" => {
            let rotor = RotorSpec::new(required("i1")?, required("i3")?, 1.0)?;
            let params = ResponseParams::new(required("beta")?, required("tau")?, 0.0)?;
            SweepSpec::chi(
                rotor,
                params,
                either("omega-lo", "lo")?,
                either("omega-hi", "hi")?,
                steps,
            )
        }
        other => {
            return Err(parse_err(
                kind_line,
                format!("unknown kind `{other}` (radial, phase or chi)"),
            ));
        }
    };
    spec.validate()?;
    Ok(spec)
}
