//! Straight-line re-implementations of both algorithms over plain vectors.
//! Deliberately shares no code with the library.

const START: [&[usize]; 4] = [&[0], &[0, 1], &[0, 2, 1], &[0, 2, 1, 3]];

fn positions(g: &[usize], w: usize) -> Vec<usize> {
    (0..g.len()).filter(|&p| g[p] == w).collect()
}

fn cyclic_neighbour(members: &[usize], p: usize, step: isize) -> usize {
    let k = members.iter().position(|&q| q == p).unwrap() as isize;
    let n = members.len() as isize;
    members[(k + step).rem_euclid(n) as usize]
}

/// Descent by copying values from successors, for duple/triple meters.
/// `None` when the input is outside the algorithm's domain.
pub fn reference(g: &[usize]) -> Option<Vec<usize>> {
    let n = g.len();
    let top = *g.first()?;
    let tops = positions(g, top);
    let seed: &[usize] = match tops.len() {
        2 => &[1, 0],
        3 => &[2, 0, 1],
        _ => return None,
    };
    let mut c: Vec<Option<usize>> = vec![None; n];
    for (&p, &v) in tops.iter().zip(seed) {
        c[p] = Some(v);
    }
    for f in (0..top).rev() {
        let focus = positions(g, f);
        if focus.is_empty() {
            return None;
        }
        let reached: Vec<usize> = (0..n).filter(|&p| g[p] == f || c[p].is_some()).collect();
        let mut copied = Vec::new();
        let mut second = Vec::new();
        for &p in &focus {
            let q = cyclic_neighbour(&reached, p, 1);
            match c[q] {
                Some(v) => copied.push((p, v)),
                None => {
                    let r = cyclic_neighbour(&reached, q, 1);
                    second.push((p, c[r]?));
                }
            }
        }
        second.sort_by_key(|&(_, v)| v);
        let (nj, nl) = (copied.len(), second.len());
        for v in c.iter_mut().flatten() {
            *v += nj + nl;
        }
        for (p, v) in copied {
            c[p] = Some(v + nl);
        }
        for (rank, (p, _)) in second.into_iter().enumerate() {
            c[p] = Some(rank);
        }
    }
    c.into_iter().collect()
}

/// Priority-list construction by cyclic predecessors, for any stratified
/// meter with at most four top pulses.
pub fn generalized(g: &[usize]) -> Option<Vec<usize>> {
    let n = g.len();
    let top = *g.first()?;
    let tops = positions(g, top);
    let start = START.get(tops.len().checked_sub(1)?)?;
    let mut order: Vec<usize> = start.iter().map(|&k| tops[k]).collect();
    let mut listed = vec![false; n];
    for &p in &order {
        listed[p] = true;
    }
    while order.len() < n {
        let f = order.iter().map(|&p| g[p]).min()?;
        let same: Vec<usize> = (0..n).filter(|&p| g[p] == f && !listed[p]).collect();
        let candidates = if same.is_empty() {
            let lower = g.iter().copied().filter(|&w| w < f).max()?;
            positions(g, lower)
        } else {
            same
        };
        let members: Vec<usize> = (0..n).filter(|&p| listed[p] || candidates.contains(&p)).collect();
        let added: Vec<usize> = order
            .iter()
            .map(|&p| cyclic_neighbour(&members, p, -1))
            .filter(|q| candidates.contains(q))
            .collect();
        if added.is_empty() {
            return None;
        }
        for &q in &added {
            listed[q] = true;
        }
        order.extend(added);
    }
    let mut result = vec![0; n];
    for (k, &p) in order.iter().enumerate() {
        result[p] = n - 1 - k;
    }
    Some(result)
}
