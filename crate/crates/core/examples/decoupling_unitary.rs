// Build the decoupling unitary for every block pattern of size 5 and check
// that the hollow-block space and its conjugate span all hollow matrices.
use matrix_waring::linalg::{joint_commutant_dimension, subspace_sum_rank, CMatrix};
use matrix_waring::unitaries::{build_decoupling_unitary, BlockPattern};

fn main() {
    let n = 5;
    for p in BlockPattern::all(n) {
        let (u, layout) = build_decoupling_unitary(&p).expect("pattern is valid");
        let v = p.hollow_block_basis();
        let rank = subspace_sum_rank(&v, &v.conjugated(&u), 1e-10).unwrap();
        let mut family = p.projectors();
        let conj: Vec<CMatrix> = family.iter().map(|r| &u * r * u.adjoint()).collect();
        family.extend(conj);
        let commutant = joint_commutant_dimension(&family, 1e-10).unwrap();
        println!(
            "{p}: rank {rank} (at least {} needed), commutant dimension {commutant}, {} rotation parameters",
            n * n - n,
            layout.params.len()
        );
    }
}
