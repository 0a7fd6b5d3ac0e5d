//! The presentation engine: Smith normal form for abelian invariants and
//! Todd-Coxeter coset enumeration for orders of finitely presented groups.

use chaincore::presentation::{
    abelianization, smith_normal_form, todd_coxeter, AbelianInvariants, GroupPresentation,
    TcOutcome,
};

fn main() {
    let snf = smith_normal_form(&[vec![2, 0], vec![0, 3]]);
    println!("SNF of diag(2,3): {:?}", snf.d); // [1, 6]

    // <a, b | a^2, b^2, (ab)^3> is S3
    let s3 = GroupPresentation::new(
        2,
        vec![vec![1, 1], vec![2, 2], vec![1, 2, 1, 2, 1, 2]],
    );
    match todd_coxeter(&s3, 10_000) {
        TcOutcome::Completed { order, .. } => println!("enumerated order: {order}"),
        TcOutcome::Exhausted { limit } => println!("exhausted at {limit} cosets"),
    }
    match abelianization(&s3) {
        AbelianInvariants::Finite(ab) => {
            println!("abelianization invariants: {:?}", ab.invariant_factors)
        }
        AbelianInvariants::Infinite { free_rank, .. } => {
            println!("infinite abelianization, free rank {free_rank}")
        }
    }
}
