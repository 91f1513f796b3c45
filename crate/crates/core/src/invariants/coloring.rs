use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by [`chromatic_number`].
pub const CHROMATIC_ORDER_LIMIT: usize = 16;

/// Exact chromatic number by backtracking colouring with symmetry breaking
/// (a vertex may only open the next unused colour).
pub fn chromatic_number(f: &Graph) -> Result<usize> {
    let n = f.n();
    if n > CHROMATIC_ORDER_LIMIT {
        return Err(Error::capability(
            format!("chromatic number of a graph of order {n}"),
            CHROMATIC_ORDER_LIMIT,
            "exact colouring is limited to small patterns",
        ));
    }
    if n == 0 {
        return Ok(0);
    }
    if f.edge_count() == 0 {
        return Ok(1);
    }
    let masks = f.masks().expect("order at most 16");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(masks[v].count_ones()));
    (2..=n)
        .find(|&k| {
            let mut classes = vec![0u64; k];
            colourable(masks, &order, 0, &mut classes, 0)
        })
        .ok_or_else(|| Error::Invariant("no colouring with n colours".into()))
}

fn colourable(masks: &[u64], order: &[usize], i: usize, classes: &mut [u64], used: usize) -> bool {
    let Some(&v) = order.get(i) else {
        return true;
    };
    let limit = (used + 1).min(classes.len());
    for c in 0..limit {
        if classes[c] & masks[v] == 0 {
            classes[c] |= 1 << v;
            if colourable(masks, order, i + 1, classes, used.max(c + 1)) {
                return true;
            }
            classes[c] &= !(1 << v);
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph, petersen_graph, turan_graph};

    #[test]
    fn examples() {
        for r in 1..=6 {
            assert_eq!(chromatic_number(&complete_graph(r + 1)).unwrap(), r + 1);
        }
        assert_eq!(chromatic_number(&cycle_graph(5)).unwrap(), 3);
        assert_eq!(chromatic_number(&cycle_graph(6)).unwrap(), 2);
        assert_eq!(chromatic_number(&petersen_graph()).unwrap(), 3);
        assert_eq!(chromatic_number(&path_graph(3)).unwrap(), 2);
        assert_eq!(chromatic_number(&turan_graph(9, 4)).unwrap(), 4);
        assert_eq!(chromatic_number(&Graph::empty(3)).unwrap(), 1);
        assert!(matches!(
            chromatic_number(&Graph::empty(17)),
            Err(Error::Capability { .. })
        ));
    }

    #[test]
    fn petersen_has_no_two_colouring_but_a_three_colouring() {
        // exhaustive check of the answer above over all 3^10 assignments
        let p = petersen_graph();
        let edges = p.edges();
        let mut found = [false; 4];
        for k in 2..=3usize {
            let total = k.pow(10);
            found[k] = (0..total).any(|mut code| {
                let mut col = [0usize; 10];
                for c in col.iter_mut() {
                    *c = code % k;
                    code /= k;
                }
                edges.iter().all(|&(u, v)| col[u] != col[v])
            });
        }
        assert!(!found[2] && found[3]);
    }
}
