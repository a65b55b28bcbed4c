//! Grid flags of the form `name=start:stop:count`.
//!
//! Endpoints are plain numbers or multiples of `pi`: `pi`, `2pi`, `pi/2`,
//! `0.5*pi`, `-pi/4`. A grid of `count` points spans `[start, stop]`
//! inclusively; a single point sits at `start`.

use std::f64::consts::PI;

#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Axis {
    pub fn value(&self, i: usize) -> f64 {
        if self.count == 1 {
            return self.start;
        }
        if i + 1 == self.count {
            return self.stop;
        }
        self.start + (self.stop - self.start) * i as f64 / (self.count - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.value(i)).collect()
    }
}

fn parse_number(tok: &str) -> Result<f64, String> {
    let t = tok.trim();
    let bad = || format!("cannot parse `{tok}` as a number or multiple of pi");
    let Some(pos) = t.find("pi") else {
        return t.parse::<f64>().map_err(|_| bad());
    };
    let (head, tail) = (&t[..pos], &t[pos + 2..]);
    let head = head.strip_suffix('*').unwrap_or(head);
    let factor = match head {
        "" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().map_err(|_| bad())?,
    };
    let divisor = match tail {
        "" => 1.0,
        d => d
            .strip_prefix('/')
            .ok_or_else(bad)?
            .parse::<f64>()
            .map_err(|_| bad())?,
    };
    if divisor == 0.0 {
        return Err(bad());
    }
    Ok(factor * PI / divisor)
}

pub fn parse_axis(flag: &str) -> Result<Axis, String> {
    let (name, range) = flag
        .split_once('=')
        .ok_or_else(|| format!("grid `{flag}`: expected name=start:stop:count"))?;
    let parts: Vec<&str> = range.split(':').collect();
    let [start, stop, count] = parts[..] else {
        return Err(format!("grid `{flag}`: expected name=start:stop:count"));
    };
    let count: usize = count
        .trim()
        .parse()
        .map_err(|_| format!("grid `{flag}`: count `{count}` is not a positive integer"))?;
    if count == 0 {
        return Err(format!("grid `{flag}`: count must be at least 1"));
    }
    let name = name.trim();
    if name.is_empty() {
        return Err(format!("grid `{flag}`: empty parameter name"));
    }
    Ok(Axis {
        name: name.to_string(),
        start: parse_number(start).map_err(|e| format!("grid `{flag}`: {e}"))?,
        stop: parse_number(stop).map_err(|e| format!("grid `{flag}`: {e}"))?,
        count,
    })
}

/// Orders `axes` as `names`, rejecting unknown, duplicate and missing axes.
pub fn arrange(axes: Vec<Axis>, names: &[&str]) -> Result<Vec<Axis>, String> {
    let mut slots: Vec<Option<Axis>> = vec![None; names.len()];
    for axis in axes {
        let k = names.iter().position(|n| *n == axis.name).ok_or_else(|| {
            format!(
                "unknown grid parameter `{}`; expected {}",
                axis.name,
                names.join(", ")
            )
        })?;
        if slots[k].is_some() {
            return Err(format!("grid parameter `{}` given twice", axis.name));
        }
        slots[k] = Some(axis);
    }
    slots
        .into_iter()
        .zip(names)
        .map(|(s, n)| s.ok_or_else(|| format!("missing --grid for parameter `{n}`")))
        .collect()
}

/// All grid points in lexicographic order of their index tuples.
pub fn points(axes: &[Axis]) -> Vec<Vec<f64>> {
    let mut out = vec![Vec::new()];
    for axis in axes {
        let vals = axis.values();
        out = out
            .into_iter()
            .flat_map(|p| {
                vals.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(*v);
                    q
                })
            })
            .collect();
    }
    out
}
