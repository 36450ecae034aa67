//! Value parsers shared by several subcommands.

use anyhow::{bail, ensure, Context, Result};
use psc_core::psc::DesignSpec;

/// Reads `m=9,t=7,k=256,d=5`. `d` defaults to `m`.
pub fn design_spec(text: &str) -> Result<DesignSpec> {
    let (mut m, mut t, mut k, mut d) = (None, None, None, None);
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part.split_once('=').with_context(|| format!("expected key=value, got `{part}`"))?;
        let value: usize = value.trim().parse().with_context(|| format!("bad number in `{part}`"))?;
        let slot = match key.trim() {
            "m" => &mut m,
            "t" => &mut t,
            "k" => &mut k,
            "d" => &mut d,
            other => bail!("unknown key `{other}` in design spec"),
        };
        ensure!(slot.replace(value).is_none(), "key `{}` given twice", key.trim());
    }
    let (Some(m), Some(t), Some(k)) = (m, t, k) else {
        bail!("design spec needs m, t and k: `{text}`");
    };
    Ok(DesignSpec::new(m, t, k, d.unwrap_or(m))?)
}

fn rounded(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

/// Erasure grid: one value, a comma list, or `start:stop:step` with `stop`
/// included when it lies within half a step of the last point.
pub fn epsilon_grid(text: &str) -> Result<Vec<f64>> {
    let number = |s: &str| -> Result<f64> { s.trim().parse().with_context(|| format!("bad number `{}`", s.trim())) };
    let values: Vec<f64> = if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        ensure!(parts.len() == 3, "range must be start:stop:step, got `{text}`");
        let (start, stop, step) = (number(parts[0])?, number(parts[1])?, number(parts[2])?);
        ensure!(step > 0.0, "step must be positive");
        ensure!(stop >= start, "range stop below start");
        let count = ((stop - start) / step + 0.5).floor() as usize + 1;
        (0..count).map(|i| rounded(start + i as f64 * step)).collect()
    } else {
        text.split(',').map(number).collect::<Result<_>>()?
    };
    ensure!(!values.is_empty(), "empty erasure grid");
    for &e in &values {
        ensure!((0.0..=1.0).contains(&e), "erasure probability {e} outside [0, 1]");
    }
    Ok(values)
}

/// Comma separated list of positive integers.
pub fn usize_list(text: &str) -> Result<Vec<usize>> {
    text.split(',').map(|s| s.trim().parse().with_context(|| format!("bad integer `{}`", s.trim()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_defaults_degree() {
        let s = design_spec("m=4,t=3,k=11").unwrap();
        assert_eq!((s.m, s.t, s.k, s.d), (4, 3, 11, 4));
        let s = design_spec("d=5, k=256,t=7,m=9").unwrap();
        assert_eq!((s.m, s.t, s.k, s.d), (9, 7, 256, 5));
        assert!(design_spec("m=4,t=3").is_err());
        assert!(design_spec("m=4,t=3,k=1,q=2").is_err());
        assert!(design_spec("m=4,m=5,t=3,k=1").is_err());
    }

    #[test]
    fn ranges_include_stop() {
        assert_eq!(epsilon_grid("0.36:0.46:0.02").unwrap(), vec![0.36, 0.38, 0.4, 0.42, 0.44, 0.46]);
        assert_eq!(epsilon_grid("0.1:0.2:0.1").unwrap(), vec![0.1, 0.2]);
        assert_eq!(epsilon_grid("0:0.24:0.1").unwrap(), vec![0.0, 0.1, 0.2]);
        assert_eq!(epsilon_grid("0.3").unwrap(), vec![0.3]);
        assert_eq!(epsilon_grid("0.1, 0.5").unwrap(), vec![0.1, 0.5]);
        assert!(epsilon_grid("0.1:0.2:0").is_err());
        assert!(epsilon_grid("1.5").is_err());
        assert!(epsilon_grid("a").is_err());
    }
}
