use anyhow::{anyhow, bail, Context, Result};
use axkatz::bounds::Target;
use axkatz::calculus::FiniteMap;
use axkatz::groups::AbelianShape;
use axkatz::partitions::Partition;

pub fn numbers<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| anyhow!("bad {what} entry {x:?} in {s:?}"))
        })
        .collect()
}

pub fn partition(s: &str) -> Result<Partition> {
    Ok(Partition::new(numbers(s, "partition")?)?)
}

pub fn shape(s: &str) -> Result<AbelianShape> {
    Ok(AbelianShape::new(numbers(s, "group factor")?)?)
}

/// `β:d[,β:d...]`.
pub fn targets(s: &str) -> Result<Vec<Target>> {
    s.split(',')
        .map(|item| {
            let (b, d) = item
                .split_once(':')
                .ok_or_else(|| anyhow!("target {item:?} is not of the form β:d"))?;
            let beta: u32 = b.trim().parse().map_err(|_| anyhow!("bad β in {item:?}"))?;
            let d: u64 = d.trim().parse().map_err(|_| anyhow!("bad d in {item:?}"))?;
            if beta == 0 || d == 0 {
                bail!("β and d must be positive in {item:?}");
            }
            Ok(Target { beta, d })
        })
        .collect()
}

/// `m_1,m_2,...:d`, a non-cyclic target with its degree cap.
pub fn target_shape(s: &str) -> Result<(AbelianShape, u64)> {
    let (factors, d) = s
        .rsplit_once(':')
        .ok_or_else(|| anyhow!("target shape {s:?} is not of the form m1,m2,...:d"))?;
    let d: u64 = d.trim().parse().map_err(|_| anyhow!("bad degree cap in {s:?}"))?;
    if d == 0 {
        bail!("degree cap must be positive in {s:?}");
    }
    Ok((shape(factors)?, d))
}

/// Cyclic targets `Z/p^β` plus explicit shapes, as codomain/cap pairs.
pub fn codomains(p: u64, cyclic: &[Target], shapes: &[String]) -> Result<Vec<(AbelianShape, u64)>> {
    let mut out = Vec::new();
    for t in cyclic {
        let m = p
            .checked_pow(t.beta)
            .ok_or_else(|| anyhow!("{p}^{} does not fit in 64 bits", t.beta))?;
        out.push((AbelianShape::cyclic(m)?, t.d));
    }
    for s in shapes {
        out.push(target_shape(s)?);
    }
    if out.is_empty() {
        bail!("give at least one target via --targets or --target-shape");
    }
    Ok(out)
}

pub fn map_file(path: &str) -> Result<FiniteMap> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    serde_json::from_str(&text).with_context(|| format!("parsing map {path}"))
}

pub fn map_files(list: &str) -> Result<Vec<FiniteMap>> {
    list.split(',').map(|p| map_file(p.trim())).collect()
}

/// Partitions with total at most `max_total` and at most `max_parts` parts,
/// ordered by total and then reverse-lexicographically.
pub fn partitions_up_to(max_total: u32, max_parts: usize) -> Vec<Partition> {
    fn rec(rest: u32, cap: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if parts == 0 {
            return;
        }
        for a in (1..=cap.min(rest)).rev() {
            cur.push(a);
            rec(rest - a, a, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for total in 1..=max_total {
        let mut found = Vec::new();
        rec(total, total, max_parts, &mut Vec::new(), &mut found);
        out.extend(found.into_iter().map(|v| Partition::new(v).expect("positive parts")));
    }
    out
}
