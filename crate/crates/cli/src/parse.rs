//! Parsers for command-line values.

use std::path::Path;

use gkz_core::exactla::serial::parse_rational;
use gkz_core::triang::{enumerate_regular, PointConfiguration, Simplex, Triangulation};
use num_complex::Complex64;

use crate::CliError;

pub fn rational_list(s: &str) -> Result<gkz_core::exactla::RatVector, CliError> {
    s.split(',')
        .map(|t| parse_rational(t).ok_or_else(|| CliError::usage(format!("bad rational {t:?}"))))
        .collect()
}

fn integer(s: &str) -> Result<i64, CliError> {
    s.trim().parse().map_err(|_| CliError::usage(format!("bad integer {s:?}")))
}

/// `0`, a comma-separated integer vector, or a signed combination of columns such as `-a4` or `a1-2a4`.
pub fn beta(cfg: &PointConfiguration, s: &str) -> Result<Vec<i64>, CliError> {
    let n = cfg.rank();
    let s = s.trim();
    if s == "0" {
        return Ok(vec![0; n]);
    }
    if !s.contains('a') {
        let v: Vec<i64> = s.split(',').map(integer).collect::<Result<_, _>>()?;
        if v.len() != n {
            return Err(CliError::usage(format!("beta needs {n} entries, got {}", v.len())));
        }
        return Ok(v);
    }
    let mut out = vec![0i64; n];
    let mut rest = s.replace(' ', "");
    if !rest.starts_with(['+', '-']) {
        rest.insert(0, '+');
    }
    let bytes: Vec<char> = rest.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let sign = if bytes[i] == '-' { -1 } else { 1 };
        i += 1;
        let start = i;
        while i < bytes.len() && bytes[i] != '+' && bytes[i] != '-' {
            i += 1;
        }
        let term: String = bytes[start..i].iter().collect();
        let (coef, col) = term.split_once('a').ok_or_else(|| CliError::usage(format!("bad beta term {term:?}")))?;
        let coef = if coef.is_empty() { 1 } else { integer(coef)? };
        let j = integer(col)?;
        if j < 1 || j as usize > cfg.npoints() {
            return Err(CliError::usage(format!("column index {j} out of range")));
        }
        for (o, x) in out.iter_mut().zip(cfg.point(j as usize - 1)) {
            *o += sign * coef * i64::try_from(x).map_err(|_| CliError::usage("column entry too large"))?;
        }
    }
    Ok(out)
}

pub fn complex(s: &str) -> Result<Complex64, CliError> {
    let t = s.trim().replace(' ', "");
    let bad = || CliError::usage(format!("bad complex number {s:?}"));
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let split = body
        .char_indices()
        .rev()
        .find(|&(k, c)| k > 0 && (c == '+' || c == '-') && !matches!(body.as_bytes()[k - 1], b'e' | b'E'))
        .map(|(k, _)| k);
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re.parse::<f64>().map_err(|_| bad())?, im))
}

pub fn complex_list(s: &str) -> Result<Vec<Complex64>, CliError> {
    s.split(',').map(complex).collect()
}

pub fn format_complex(c: Complex64) -> String {
    if c.im.is_sign_negative() {
        format!("{:e}-{:e}i", c.re, -c.im)
    } else {
        format!("{:e}+{:e}i", c.re, c.im)
    }
}

fn simplex_list(cfg: &PointConfiguration, s: &str) -> Result<Vec<Simplex>, CliError> {
    let groups: Vec<Vec<usize>> = if s.contains(';') || (s.contains(',') && !s.split(',').all(|g| g.len() == cfg.rank())) {
        s.split(';')
            .map(|g| g.split(',').map(|x| integer(x).map(|v| v as usize)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()?
    } else {
        if cfg.npoints() > 9 {
            return Err(CliError::usage("digit-string simplices need at most 9 points; use \"1,2,4;1,3,4\""));
        }
        s.split(',')
            .map(|g| g.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| CliError::usage(format!("bad simplex {g:?}")))).collect())
            .collect::<Result<_, _>>()?
    };
    groups.iter().map(|g| Simplex::from_one_based(g).map_err(CliError::from)).collect()
}

/// `T<k>` (1-based position in the sorted enumeration), a JSON file, or an explicit list of maximal simplices.
pub fn triangulation(cfg: &PointConfiguration, spec: &str, seed: u64) -> Result<Triangulation, CliError> {
    let spec = spec.trim();
    if let Some(k) = spec.strip_prefix(['T', 't']).and_then(|k| k.parse::<usize>().ok()) {
        let e = enumerate_regular(cfg, seed)?;
        return e
            .triangulations
            .get(k.wrapping_sub(1))
            .cloned()
            .ok_or_else(|| CliError::usage(format!("there are {} triangulations; T{k} does not exist", e.len())));
    }
    if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|e| CliError::usage(format!("{spec}: {e}")))?;
        let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{spec}: {e}")))?;
        let v = v.get("result").unwrap_or(&v);
        let maximal: Vec<Vec<usize>> = serde_json::from_value(v.get("maximal").cloned().unwrap_or_default())
            .map_err(|e| CliError::usage(format!("{spec}: missing or bad \"maximal\": {e}")))?;
        let simplices = maximal.iter().map(|g| Simplex::from_one_based(g)).collect::<Result<Vec<_>, _>>()?;
        return Ok(Triangulation::from_maximal(cfg, &simplices)?);
    }
    Ok(Triangulation::from_maximal(cfg, &simplex_list(cfg, spec)?)?)
}

pub fn simplex(s: &str) -> Result<Simplex, CliError> {
    let idx: Vec<usize> = if s.contains(',') {
        s.split(',').map(|x| integer(x).map(|v| v as usize)).collect::<Result<_, _>>()?
    } else {
        s.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| CliError::usage(format!("bad simplex {s:?}")))).collect::<Result<_, _>>()?
    };
    Ok(Simplex::from_one_based(&idx)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PointConfiguration {
        PointConfiguration::from_rows(&[vec![1, 1, 1, 1, 1, 1], vec![0, 1, -1, 0, 1, 0], vec![1, 1, 0, 0, 0, -1]]).unwrap()
    }

    #[test]
    fn complex_numbers() {
        assert_eq!(complex("1.5").unwrap(), Complex64::new(1.5, 0.0));
        assert_eq!(complex("2i").unwrap(), Complex64::new(0.0, 2.0));
        assert_eq!(complex("-0.25-3i").unwrap(), Complex64::new(-0.25, -3.0));
        assert_eq!(complex("1e-3+2e+1i").unwrap(), Complex64::new(1e-3, 20.0));
        assert_eq!(complex(&format_complex(Complex64::new(0.1, -7.5))).unwrap(), Complex64::new(0.1, -7.5));
        assert!(complex("x").is_err());
    }

    #[test]
    fn beta_forms() {
        let c = cfg();
        assert_eq!(beta(&c, "0").unwrap(), vec![0, 0, 0]);
        assert_eq!(beta(&c, "-a4").unwrap(), vec![-1, 0, 0]);
        assert_eq!(beta(&c, "a2-2a4").unwrap(), vec![-1, 1, 1]);
        assert_eq!(beta(&c, "1,2,3").unwrap(), vec![1, 2, 3]);
        assert!(beta(&c, "1,2").is_err());
    }

    #[test]
    fn simplex_lists() {
        let c = cfg();
        let a = triangulation(&c, "124,134,245,346,456", 0).unwrap();
        let b = triangulation(&c, "1,2,4;1,3,4;2,4,5;3,4,6;4,5,6", 0).unwrap();
        assert_eq!(a.maximal(), b.maximal());
        assert_eq!(triangulation(&c, "T5", 0).unwrap().maximal(), a.maximal());
        assert!(triangulation(&c, "T11", 0).is_err());
    }
}
