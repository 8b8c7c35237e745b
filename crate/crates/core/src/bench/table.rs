//! CSV tables. Columns are fixed; reals carry 12 significant digits.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

/// One solver run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub dataset: String,
    pub scheme: String,
    pub n: usize,
    pub m: usize,
    pub q: f64,
    pub k: Option<usize>,
    pub algorithm: String,
    /// Blank unless the run completed.
    pub expected_reward: Option<f64>,
    pub size: Option<usize>,
    pub seconds: f64,
    pub seed: u64,
    /// `ok`, `timeout`, `refused` or `error: ...`.
    pub status: String,
}

pub const ROW_COLUMNS: [&str; 12] =
    ["dataset", "scheme", "n", "m", "q", "k", "algorithm", "expected_reward", "size", "seconds", "seed", "status"];

/// Mean and sample standard deviation over the seeds of one configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub dataset: String,
    pub scheme: String,
    pub n: usize,
    pub m: usize,
    pub q: f64,
    pub k: Option<usize>,
    pub algorithm: String,
    pub runs: usize,
    pub completed: usize,
    pub mean_reward: Option<f64>,
    pub std_reward: Option<f64>,
    pub mean_size: Option<f64>,
    pub mean_seconds: f64,
}

pub const SUMMARY_COLUMNS: [&str; 13] = [
    "dataset",
    "scheme",
    "n",
    "m",
    "q",
    "k",
    "algorithm",
    "runs",
    "completed",
    "mean_reward",
    "std_reward",
    "mean_size",
    "mean_seconds",
];

/// `x` with 12 significant digits, in the style of C's `%.12g`.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let sci = format!("{x:.11e}");
    let (mantissa, e) = sci.split_once('e').expect("scientific notation");
    let e: i32 = e.parse().expect("integer exponent");
    // The exponent is taken after rounding, so 999999999999.9 becomes 1e+12.
    if !(-4..12).contains(&e) {
        let mantissa = trim_zeros(mantissa);
        return format!("{mantissa}e{}{:02}", if e < 0 { '-' } else { '+' }, e.abs());
    }
    let decimals = (11 - e).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt<T>(v: Option<T>, f: impl Fn(T) -> String) -> String {
    v.map(f).unwrap_or_default()
}

pub fn write_rows<W: Write>(out: W, rows: &[BenchRow]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(ROW_COLUMNS)?;
    for r in rows {
        w.write_record([
            r.dataset.clone(),
            r.scheme.clone(),
            r.n.to_string(),
            r.m.to_string(),
            format_sig(r.q),
            opt(r.k, |k| k.to_string()),
            r.algorithm.clone(),
            opt(r.expected_reward, format_sig),
            opt(r.size, |s| s.to_string()),
            format_sig(r.seconds),
            r.seed.to_string(),
            r.status.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_summary<W: Write>(out: W, rows: &[SummaryRow]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SUMMARY_COLUMNS)?;
    for r in rows {
        w.write_record([
            r.dataset.clone(),
            r.scheme.clone(),
            r.n.to_string(),
            r.m.to_string(),
            format_sig(r.q),
            opt(r.k, |k| k.to_string()),
            r.algorithm.clone(),
            r.runs.to_string(),
            r.completed.to_string(),
            opt(r.mean_reward, format_sig),
            opt(r.std_reward, format_sig),
            opt(r.mean_size, format_sig),
            format_sig(r.mean_seconds),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Groups rows that differ only in the seed, in order of first appearance.
pub fn summarize(rows: &[BenchRow]) -> Vec<SummaryRow> {
    let mut order: Vec<(String, String, usize, usize, u64, Option<usize>, String)> = Vec::new();
    let mut groups: BTreeMap<usize, Vec<&BenchRow>> = BTreeMap::new();
    for r in rows {
        let key = (r.dataset.clone(), r.scheme.clone(), r.n, r.m, r.q.to_bits(), r.k, r.algorithm.clone());
        let idx = match order.iter().position(|k| *k == key) {
            Some(i) => i,
            None => {
                order.push(key);
                order.len() - 1
            }
        };
        groups.entry(idx).or_default().push(r);
    }
    groups
        .into_values()
        .map(|g| {
            let first = g[0];
            let done: Vec<&BenchRow> = g.iter().copied().filter(|r| r.expected_reward.is_some()).collect();
            let rewards: Vec<f64> = done.iter().filter_map(|r| r.expected_reward).collect();
            let sizes: Vec<f64> = done.iter().filter_map(|r| r.size.map(|s| s as f64)).collect();
            let std = match rewards.len() {
                0 => None,
                1 => Some(0.0),
                n => {
                    let mu = mean(&rewards);
                    Some((rewards.iter().map(|x| (x - mu).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt())
                }
            };
            SummaryRow {
                dataset: first.dataset.clone(),
                scheme: first.scheme.clone(),
                n: first.n,
                m: first.m,
                q: first.q,
                k: first.k,
                algorithm: first.algorithm.clone(),
                runs: g.len(),
                completed: done.len(),
                mean_reward: (!rewards.is_empty()).then(|| mean(&rewards)),
                std_reward: std,
                mean_size: (!sizes.is_empty()).then(|| mean(&sizes)),
                mean_seconds: mean(&g.iter().map(|r| r.seconds).collect::<Vec<_>>()),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(1.01), "1.01");
        assert_eq!(format_sig(512.0), "512");
        assert_eq!(format_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_sig(2.0 / 3.0 * 1000.0), "666.666666667");
        assert_eq!(format_sig(123456789012345.0), "1.23456789012e+14");
        assert_eq!(format_sig(1.5e-7), "1.5e-07");
        assert_eq!(format_sig(-0.25), "-0.25");
        assert_eq!(format_sig(999999999999.9), "1e+12");
    }

    fn row(alg: &str, seed: u64, reward: Option<f64>) -> BenchRow {
        BenchRow {
            dataset: "synthetic".into(),
            scheme: "symmetric".into(),
            n: 2,
            m: 3,
            q: 0.1,
            k: None,
            algorithm: alg.into(),
            expected_reward: reward,
            size: reward.map(|_| 1),
            seconds: 0.5,
            seed,
            status: if reward.is_some() { "ok" } else { "timeout" }.into(),
        }
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_rows(&mut buf, &[row("gb", 1, Some(2.5)), row("gb", 2, None)]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], ROW_COLUMNS.join(","));
        assert_eq!(lines[1], "synthetic,symmetric,2,3,0.1,,gb,2.5,1,0.5,1,ok");
        assert_eq!(lines[2], "synthetic,symmetric,2,3,0.1,,gb,,,0.5,2,timeout");
    }

    #[test]
    fn summary_statistics() {
        let rows = vec![row("gb", 1, Some(1.0)), row("gbp", 1, Some(4.0)), row("gb", 2, Some(3.0)), row("gb", 3, None)];
        let s = summarize(&rows);
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].algorithm, "gb");
        assert_eq!((s[0].runs, s[0].completed), (3, 2));
        assert_eq!(s[0].mean_reward, Some(2.0));
        assert_eq!(s[0].std_reward, Some(2f64.sqrt()));
        assert_eq!(s[1].std_reward, Some(0.0));
    }
}
