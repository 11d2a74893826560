use num_complex::Complex64;

/// A group of numerically equal eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    /// Mean of the members.
    pub value: Complex64,
    pub multiplicity: usize,
    /// Indices into the eigenvalue list that was clustered.
    pub members: Vec<usize>,
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Single-linkage clustering: λᵢ and λⱼ share a cluster when a chain of
/// steps of length ≤ tol·max|λ| joins them. Clusters come back sorted by
/// real part, then imaginary part, of their mean.
pub fn cluster_eigenvalues(eigs: &[Complex64], tol: f64) -> Vec<Cluster> {
    let n = eigs.len();
    let scale = eigs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let radius = tol * if scale > 0.0 { scale } else { 1.0 };
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in i + 1..n {
            if (eigs[i] - eigs[j]).norm() <= radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut clusters: Vec<Cluster> = Vec::new();
    let mut slot_of_root = vec![usize::MAX; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        if slot_of_root[root] == usize::MAX {
            slot_of_root[root] = clusters.len();
            clusters.push(Cluster { value: Complex64::new(0.0, 0.0), multiplicity: 0, members: vec![] });
        }
        let c = &mut clusters[slot_of_root[root]];
        c.members.push(i);
        c.multiplicity += 1;
    }
    for c in &mut clusters {
        let sum: Complex64 = c.members.iter().map(|&i| eigs[i]).sum();
        c.value = sum / c.multiplicity as f64;
    }
    clusters.sort_by(|a, b| a.value.re.total_cmp(&b.value.re).then(a.value.im.total_cmp(&b.value.im)));
    clusters
}
