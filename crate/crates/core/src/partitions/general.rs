//! Partitions that work for any adjacency system: paired point and line
//! classes on the incidence graph (odd and even dimension), and the normal
//! basis classes on the conjugation polarity graph.

use super::{labels, subfield_index, unsupported, ClassedPartition, KeyFamily, PartitionError};
use crate::adg::{is_point_line_symmetric, AdgSpec, VertexCodec};
use crate::gf::{Fe, QuadBasis};
use crate::graphs::Partition;

fn check_pairing(pairing: &[u32], r: u32) -> Result<Vec<u32>, PartitionError> {
    if pairing.len() != r as usize {
        return Err(PartitionError::PairingNotBijective(format!(
            "{} entries for {r} classes",
            pairing.len()
        )));
    }
    let mut inverse = vec![u32::MAX; r as usize];
    for (a, &b) in pairing.iter().enumerate() {
        if b >= r || inverse[b as usize] != u32::MAX {
            return Err(PartitionError::PairingNotBijective(format!(
                "line class {b} is out of range or used twice"
            )));
        }
        inverse[b as usize] = a as u32;
    }
    Ok(inverse)
}

/// Builds the bipartite partition from key functions on points and lines.
/// Point class `a` is joined with line class `pairing[a]`.
fn paired(
    spec: &AdgSpec,
    r: u32,
    pairing: Option<&[u32]>,
    point_key: impl Fn(&[Fe]) -> u32 + Sync,
    line_key: impl Fn(&[Fe]) -> u32 + Sync,
    describe: impl Fn(u32) -> Vec<Fe>,
    family: KeyFamily,
) -> Result<ClassedPartition, PartitionError> {
    let identity: Vec<u32> = (0..r).collect();
    let pairing = pairing.unwrap_or(&identity);
    let inverse = check_pairing(pairing, r)?;
    let codec = spec.codec()?;
    let n = codec.count();
    let class_of = |id: u32| {
        if id < n {
            point_key(&codec.decode_vec(id))
        } else {
            inverse[line_key(&codec.decode_vec(id - n)) as usize]
        }
    };
    let partition = Partition::new(labels(2 * n, class_of), r)?;
    let keys = (0..r)
        .map(|a| {
            let mut k = describe(a);
            k.extend(describe(pairing[a as usize]));
            k
        })
        .collect();
    Ok(ClassedPartition {
        family,
        partition,
        keys,
    })
}

fn mixed(q: u32, coords: impl Iterator<Item = Fe>) -> u32 {
    coords.fold(0, |acc, c| acc * q + c.0)
}

/// For odd `m`: point classes fix `(p_1, p_3, .., p_m)`, line classes fix
/// `(ℓ_1, ℓ_2, ℓ_4, .., ℓ_{m-1})`, and paired classes are merged. Gives
/// `q^((m+1)/2)` classes with at least one edge between any two.
pub fn general_odd_partition(
    spec: &AdgSpec,
    pairing: Option<&[u32]>,
) -> Result<ClassedPartition, PartitionError> {
    let m = spec.m();
    if m % 2 == 0 {
        return Err(unsupported(format!("dimension {m} is even")));
    }
    let q = spec.q();
    let width = m.div_ceil(2);
    let keys = VertexCodec::new(q, width)?;
    let point_idx: Vec<usize> = (0..m).step_by(2).collect();
    let line_idx: Vec<usize> = std::iter::once(0).chain((1..m).step_by(2)).collect();
    paired(
        spec,
        keys.count(),
        pairing,
        |pt| mixed(q, point_idx.iter().map(|&i| pt[i])),
        |ln| mixed(q, line_idx.iter().map(|&i| ln[i])),
        |a| keys.decode_vec(a),
        KeyFamily::GeneralOdd,
    )
}

/// For even `m` over `F_{q²}` with `u = u' + u''μ`: point classes fix
/// `(p_1, p_3, .., p_{m-1}, p_m')`, line classes fix
/// `(ℓ_1, ℓ_2, ℓ_4, .., ℓ_{m-2}, ℓ_m'')`. Gives `q^(m+1)` classes.
pub fn general_even_partition(
    spec: &AdgSpec,
    basis: &QuadBasis,
) -> Result<ClassedPartition, PartitionError> {
    let m = spec.m();
    if m % 2 != 0 {
        return Err(unsupported(format!("dimension {m} is odd")));
    }
    if **spec.field() != **basis.ctx() {
        return Err(PartitionError::BasisMismatch);
    }
    let big = spec.q();
    let q = basis.q();
    let full = VertexCodec::new(big, m / 2)?;
    let r = full
        .count()
        .checked_mul(q)
        .ok_or_else(|| unsupported("too many classes"))?;
    let point_idx: Vec<usize> = (0..m - 1).step_by(2).collect();
    let line_idx: Vec<usize> = std::iter::once(0).chain((1..m - 2).step_by(2)).collect();
    paired(
        spec,
        r,
        None,
        |pt| {
            let (head, _) = basis.decompose_mu(pt[m - 1]);
            mixed(big, point_idx.iter().map(|&i| pt[i])) * q + subfield_index(basis, head)
        },
        |ln| {
            let (_, tail) = basis.decompose_mu(ln[m - 1]);
            mixed(big, line_idx.iter().map(|&i| ln[i])) * q + subfield_index(basis, tail)
        },
        |a| {
            let mut k = full.decode_vec(a / q);
            k.push(basis.subfield().element(a % q));
            k
        },
        KeyFamily::GeneralEven,
    )
}

/// On the conjugation polarity graph of a point-line-symmetric system over
/// `F_{q²}`: `V_{x_1, y_2..y_m}` collects the points `(x_1, u_2, .., u_m)`
/// with `u_i = a_i β + y_i β^q`. Gives `q^(m+1)` classes of `q^(m-1)` points.
pub fn general_polarity_partition(
    spec: &AdgSpec,
    basis: &QuadBasis,
) -> Result<ClassedPartition, PartitionError> {
    let m = spec.m();
    if m % 2 != 0 {
        return Err(unsupported(format!("dimension {m} is odd")));
    }
    if **spec.field() != **basis.ctx() {
        return Err(PartitionError::BasisMismatch);
    }
    if let Some(w) = is_point_line_symmetric(spec).witness {
        return Err(PartitionError::NotSymmetric(w));
    }
    let big = spec.q();
    let q = basis.q();
    let codec = spec.codec()?;
    let tail = VertexCodec::new(q, m - 1)?;
    let r = big
        .checked_mul(tail.count())
        .ok_or_else(|| unsupported("too many classes"))?;
    let class_of = |id: u32| {
        let v = codec.decode_vec(id);
        let ys = v[1..]
            .iter()
            .map(|&u| Fe(subfield_index(basis, basis.decompose_normal(u).1)));
        v[0].0 * tail.count() + mixed(q, ys)
    };
    let partition = Partition::new(labels(codec.count(), class_of), r)?;
    let keys = (0..r)
        .map(|c| {
            let mut k = vec![Fe(c / tail.count())];
            k.extend(
                tail.decode_vec(c % tail.count())
                    .into_iter()
                    .map(|i| basis.subfield().element(i.0)),
            );
            k
        })
        .collect();
    Ok(ClassedPartition {
        family: KeyFamily::GeneralPolarity,
        partition,
        keys,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adg::{l, p, plane_family, BipartiteGraph};
    use crate::gf::{find_normal_element, make_field};
    use crate::graphs::{materialize, pair_edge_matrix};
    use crate::partitions::plane_partition;

    #[test]
    fn pairing_must_be_a_bijection() {
        let s = AdgSpec::new(
            make_field(2, 1).unwrap(),
            vec![p(1) * l(1), p(1).pow(2) * l(1)],
        )
        .unwrap();
        assert!(general_odd_partition(&s, Some(&[0, 0, 1, 2])).is_err());
        assert!(general_odd_partition(&s, Some(&[0, 1])).is_err());
        let swapped = general_odd_partition(&s, Some(&[3, 2, 1, 0])).unwrap();
        assert_eq!(swapped.partition.class_count(), 4);
        assert_eq!(swapped.keys[0], vec![Fe(0), Fe(0), Fe(1), Fe(1)]);
    }

    #[test]
    fn odd_toy_is_complete() {
        let s = AdgSpec::new(
            make_field(2, 1).unwrap(),
            vec![p(1) * l(1), p(1).pow(2) * l(1)],
        )
        .unwrap();
        let part = general_odd_partition(&s, None).unwrap();
        assert!(part.partition.class_sizes().iter().all(|&n| n == 4));
        let g = materialize(&BipartiteGraph::new(s).unwrap(), 64).unwrap();
        let pm = pair_edge_matrix(&g, &part.partition).unwrap();
        assert!(pm.pairs().all(|(_, _, c)| c >= 1));
    }

    #[test]
    fn even_plane_is_complete() {
        let (s, _) = plane_family(2).unwrap();
        let basis = find_normal_element(s.field()).unwrap();
        let part = general_even_partition(&s, &basis).unwrap();
        assert_eq!(part.partition.class_count(), 8);
        let g = materialize(&BipartiteGraph::new(s).unwrap(), 64).unwrap();
        let pm = pair_edge_matrix(&g, &part.partition).unwrap();
        assert!(pm.pairs().all(|(_, _, c)| c >= 1));
    }

    #[test]
    fn polarity_partition_reproduces_the_plane_one() {
        let (s, _) = plane_family(2).unwrap();
        let basis = find_normal_element(s.field()).unwrap();
        let a = general_polarity_partition(&s, &basis).unwrap();
        let b = plane_partition(&s, &basis).unwrap();
        assert_eq!(a.partition, b.partition);
        assert_eq!(a.keys, b.keys);
        let bad = AdgSpec::new(s.field().clone(), vec![l(1).pow(2) * p(1)]).unwrap();
        assert!(matches!(
            general_polarity_partition(&bad, &basis),
            Err(PartitionError::NotSymmetric(_))
        ));
    }
}
