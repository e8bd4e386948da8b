use std::collections::HashMap;

use serde::Serialize;

use super::levels::NerveLevels;
use crate::error::{Error, Result};

/// Horn-filling statistics for `Λ[m, j] → N_•`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KanReport {
    pub m: usize,
    pub j: usize,
    pub horn_count: u64,
    pub min_fillers: u64,
    pub max_fillers: u64,
    /// Every horn has at least one filler.
    pub kan: bool,
    /// Every horn has exactly one filler.
    pub unique: bool,
}

/// Enumerates all horns `Λ[m, j]` and counts their fillers.
pub fn check_kan(levels: &NerveLevels, m: usize, j: usize) -> Result<KanReport> {
    if !(1..=4).contains(&m) {
        return Err(Error::IndexOutOfRange { index: m, bound: 5 });
    }
    if j > m {
        return Err(Error::IndexOutOfRange { index: j, bound: m + 1 });
    }
    let top = levels.level_size(m)?;
    let below = levels.level_size(m - 1)?;
    let slots: Vec<usize> = (0..=m).filter(|&k| k != j).collect();

    // faces[y][a] = d_a(y) for y ∈ N_{m−1}
    let faces: Vec<Vec<u64>> = if m >= 2 {
        (0..below).map(|y| (0..m).map(|a| levels.face(m - 1, a, y).unwrap()).collect()).collect()
    } else {
        Vec::new()
    };
    let face_slots = if m >= 2 { m } else { 0 };
    let by_face: Vec<HashMap<u64, Vec<u64>>> = (0..face_slots)
        .map(|a| {
            let mut idx: HashMap<u64, Vec<u64>> = HashMap::new();
            for (y, f) in faces.iter().enumerate() {
                idx.entry(f[a]).or_default().push(y as u64);
            }
            idx
        })
        .collect();

    let mut fillers: HashMap<Vec<u64>, u64> = HashMap::new();
    for x in 0..top {
        let horn = slots.iter().map(|&k| levels.face(m, k, x)).collect::<Result<Vec<_>>>()?;
        *fillers.entry(horn).or_insert(0) += 1;
    }

    let mut report = KanReport { m, j, horn_count: 0, min_fillers: u64::MAX, max_fillers: 0, kan: true, unique: true };
    let mut chosen: Vec<u64> = Vec::with_capacity(slots.len());
    let all: Vec<u64> = (0..below).collect();
    extend(&slots, &faces, &by_face, &all, &mut chosen, &mut |horn| {
        let n = fillers.get(horn).copied().unwrap_or(0);
        report.horn_count += 1;
        report.min_fillers = report.min_fillers.min(n);
        report.max_fillers = report.max_fillers.max(n);
    });
    if report.horn_count == 0 {
        report.min_fillers = 0;
    }
    report.kan = report.min_fillers >= 1;
    report.unique = report.min_fillers == 1 && report.max_fillers == 1;
    Ok(report)
}

/// Depth-first search over compatible tuples: `d_i(y_k) = d_{k−1}(y_i)` for `i < k`.
fn extend(
    slots: &[usize],
    faces: &[Vec<u64>],
    by_face: &[HashMap<u64, Vec<u64>>],
    all: &[u64],
    chosen: &mut Vec<u64>,
    visit: &mut dyn FnMut(&[u64]),
) {
    let depth = chosen.len();
    if depth == slots.len() {
        visit(chosen);
        return;
    }
    let k = slots[depth];
    let candidates: &[u64] = if depth == 0 {
        all
    } else {
        let i = slots[0];
        let need = faces[chosen[0] as usize][k - 1];
        by_face[i].get(&need).map(Vec::as_slice).unwrap_or(&[])
    };
    for &y in candidates {
        let ok = (0..depth).all(|t| {
            let i = slots[t];
            faces[y as usize][i] == faces[chosen[t] as usize][k - 1]
        });
        if ok {
            chosen.push(y);
            extend(slots, faces, by_face, all, chosen, visit);
            chosen.pop();
        }
    }
}
