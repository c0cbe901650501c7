use hopfforge_linalg::{flip, int, Scalar, SparseMat, SparseVec};
use num_traits::Zero;
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = SparseMat> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i64..4, r * c).prop_map(move |data| {
            let rows: Vec<Vec<i64>> = data.chunks(c).map(|x| x.to_vec()).collect();
            let refs: Vec<&[i64]> = rows.iter().map(|x| x.as_slice()).collect();
            SparseMat::from_rows_i64(&refs)
        })
    })
}

fn vector(len: usize) -> impl Strategy<Value = SparseVec<usize>> {
    prop::collection::vec(-4i64..5, len)
        .prop_map(|xs| SparseVec::from_terms(xs.into_iter().enumerate().map(|(i, x)| (i, int(x)))))
}

proptest! {
    #[test]
    fn rank_nullity(m in small_matrix()) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.len(), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(v).unwrap().is_zero());
        }
    }

    #[test]
    fn rank_of_transpose(m in small_matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn solve_finds_image_vectors((m, x) in small_matrix().prop_flat_map(|m| {
        let c = m.cols();
        (Just(m), vector(c))
    })) {
        let b = m.mul_vec(&x).unwrap();
        let sol = m.solve(&b).unwrap().expect("b lies in the image");
        prop_assert_eq!(m.mul_vec(&sol).unwrap(), b);
    }

    #[test]
    fn solve_returns_only_verified_solutions((m, b) in small_matrix().prop_flat_map(|m| {
        let r = m.rows();
        (Just(m), vector(r))
    })) {
        let in_image = m.column_span().contains(&b);
        match m.solve(&b).unwrap() {
            Some(x) => {
                prop_assert!(in_image);
                prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
            }
            None => prop_assert!(!in_image),
        }
    }

    #[test]
    fn kronecker_rank_multiplies(a in small_matrix(), b in small_matrix()) {
        prop_assert_eq!(a.tensor(&b).rank(), a.rank() * b.rank());
    }

    #[test]
    fn kronecker_acts_on_simple_tensors((a, b, x, y) in (small_matrix(), small_matrix()).prop_flat_map(|(a, b)| {
        let (ca, cb) = (a.cols(), b.cols());
        (Just(a), Just(b), vector(ca), vector(cb))
    })) {
        let simple = |u: &SparseVec<usize>, v: &SparseVec<usize>, n: usize| {
            let mut out = SparseVec::new();
            for (i, p) in u.iter() {
                for (j, q) in v.iter() {
                    out.add_term(i * n + j, p * q);
                }
            }
            out
        };
        let lhs = a.tensor(&b).mul_vec(&simple(&x, &y, b.cols())).unwrap();
        let rhs = simple(&a.mul_vec(&x).unwrap(), &b.mul_vec(&y).unwrap(), b.rows());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn flip_is_involution(n in 1usize..6) {
        let z = flip(n);
        prop_assert_eq!(z.mul(&z).unwrap(), SparseMat::identity(n * n));
    }

    #[test]
    fn rational_sum_is_reduced(p in -50i64..50, q in 1i64..50, r in -50i64..50, s in 1i64..50) {
        let a = Scalar::new(p.into(), q.into());
        let b = Scalar::new(r.into(), s.into());
        let sum = &a + &b;
        let expected = Scalar::new((p * s + r * q).into(), (q * s).into());
        prop_assert_eq!(&sum, &expected);
        let g = num_integer_gcd(sum.numer().clone(), sum.denom().clone());
        prop_assert!(g == 1.into() || sum.is_zero());
        prop_assert!(sum.denom() > &0.into());
    }
}

fn num_integer_gcd(a: num_bigint::BigInt, b: num_bigint::BigInt) -> num_bigint::BigInt {
    use num_traits::Signed;
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let t = &a % &b;
        a = b;
        b = t;
    }
    a
}
