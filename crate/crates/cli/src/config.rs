use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, ValueEnum};
use gtrs_core::gf::prime_power;
use gtrs_core::{Caps, Field, Gf};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Options shared by every subcommand.
#[derive(Clone, Debug, Args)]
pub struct RunConfig {
    /// Modulus of GF(q^2) over GF(p), coefficients low to high, e.g. 1,0,1.
    #[arg(long, global = true, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
    /// Primitive element, coefficients low to high, e.g. 4,1.
    #[arg(long, global = true, value_delimiter = ',')]
    pub generator: Option<Vec<u32>>,
    /// Largest message space q^k scanned for minimum distance.
    #[arg(long, global = true, env = "GTRS_DISTANCE_CAP", default_value_t = gtrs_core::codes::DEFAULT_DISTANCE_CAP)]
    pub distance_cap: u64,
    /// Largest number of k-subsets examined by the subset criterion.
    #[arg(long, global = true, env = "GTRS_SUBSET_CAP", default_value_t = gtrs_core::gtrs::DEFAULT_SUBSET_CAP)]
    pub subset_cap: u64,
    /// Largest field order scanned for polynomial roots.
    #[arg(long, global = true, env = "GTRS_SCAN_CAP", default_value_t = gtrs_core::gf::DEFAULT_SCAN_CAP)]
    pub scan_cap: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized spot checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.distance_cap == 0 || self.subset_cap == 0 || self.scan_cap == 0 {
            bail!("caps must be positive");
        }
        Ok(())
    }

    pub fn caps(&self) -> Caps {
        Caps { distance: self.distance_cap, subset: self.subset_cap, scan: self.scan_cap }
    }

    /// GF(q^2), honouring the modulus and generator overrides.
    pub fn quadratic_field(&self, q: u32) -> Result<Field> {
        let (p, s) = prime_power(q).ok_or_else(|| anyhow!("q = {q} is not a prime power"))?;
        Ok(Field::with_params(p, 2 * s, self.modulus.as_deref(), self.generator.as_deref())?)
    }

    pub fn require_json(&self, command: &str) -> Result<()> {
        if self.format != Format::Json {
            bail!("{command} only writes JSON");
        }
        Ok(())
    }

    pub fn emit_json<T: Serialize>(&self, value: &T) -> Result<()> {
        let mut text = String::new();
        write_pretty(&serde_json::to_value(value)?, 0, &mut text);
        text.push('\n');
        self.emit(text.as_bytes())
    }

    pub fn emit(&self, bytes: &[u8]) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
            None => {
                io::stdout().write_all(bytes)?;
                Ok(())
            }
        }
    }
}

/// Indented JSON with arrays of scalars (coefficient tuples) kept on one
/// line.
fn write_pretty(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push_str(&serde_json::to_string(v).expect("serializable"));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_pretty(x, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&serde_json::to_string(k).expect("serializable"));
                out.push_str(": ");
                write_pretty(x, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        _ => out.push_str(&serde_json::to_string(v).expect("serializable")),
    }
}

/// Parses an element: an integer (`3`, `-1`), a power of the primitive
/// element (`w^5`, `w`), or a coefficient tuple (`2:1`).
pub fn parse_element(field: &Field, s: &str) -> Result<Gf> {
    let s = s.trim();
    if s == "w" {
        return Ok(field.primitive());
    }
    if let Some(e) = s.strip_prefix("w^") {
        let e: i64 = e.parse().with_context(|| format!("bad exponent in {s:?}"))?;
        return Ok(field.omega_pow(e));
    }
    if s.contains(':') {
        let coeffs = s
            .split(':')
            .map(|c| c.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .with_context(|| format!("bad coefficients in {s:?}"))?;
        return Ok(field.from_coeffs(&coeffs)?);
    }
    let v: i64 = s.parse().with_context(|| format!("cannot parse element {s:?}"))?;
    Ok(field.from_int(v))
}

pub fn parse_elements(field: &Field, items: &[String]) -> Result<Vec<Gf>> {
    items.iter().map(|s| parse_element(field, s)).collect()
}

pub fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        return Ok(io::read_to_string(io::stdin())?);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_syntax() {
        let f = Field::quadratic_over(7).unwrap();
        assert_eq!(parse_element(&f, "3").unwrap(), f.from_int(3));
        assert_eq!(parse_element(&f, "-1").unwrap(), f.from_int(6));
        assert_eq!(parse_element(&f, "w").unwrap(), f.primitive());
        assert_eq!(parse_element(&f, "w^9").unwrap(), f.omega_pow(9));
        assert_eq!(parse_element(&f, "2:1").unwrap(), f.from_coeffs(&[2, 1]).unwrap());
        assert!(parse_element(&f, "x").is_err());
        assert!(parse_element(&f, "9:9").is_err());
    }

    #[test]
    fn pretty_output_round_trips() {
        let v = serde_json::json!({"a": [[1, 0], [2, 3]], "b": {"c": [], "d": null}, "e": [{"f": 1}]});
        let mut s = String::new();
        write_pretty(&v, 0, &mut s);
        assert!(s.contains("[1,0]"));
        assert_eq!(serde_json::from_str::<Value>(&s).unwrap(), v);
    }
}
