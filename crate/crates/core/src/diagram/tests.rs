use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::generate::{random_word, theta, WordConfig};
use crate::partitions::SetPartition;

fn part(k: usize, l: usize, blocks: &[&[usize]]) -> SetPartition {
    SetPartition::new(k, l, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
}

#[test]
fn generators() {
    let id = Diagram::identity(1);
    assert_eq!(id.edges(), &[(Endpoint::Lower(0), Endpoint::Upper(0))]);
    let fork = Diagram::black_spider(2, 1);
    assert_eq!(fork.vertices().len(), 1);
    assert_eq!(fork.partner(Endpoint::slot(0, 0)), Some(Endpoint::Lower(0)));
    assert_eq!(fork.partner(Endpoint::slot(0, 1)), Some(Endpoint::Lower(1)));
    assert_eq!(fork.partner(Endpoint::slot(0, 2)), Some(Endpoint::Upper(0)));
    let cup = Diagram::cup();
    assert_eq!((cup.n_lower(), cup.n_upper(), cup.edges().len()), (0, 2, 1));
    assert!(!Diagram::crossing().is_planar());
    for d in [fork, cup, id, Diagram::black_spider(0, 0), Diagram::white_spider(3, 2)] {
        d.validate().unwrap();
    }
}

#[test]
fn compose_closes_loops() {
    let l = compose(&Diagram::cap(), &Diagram::cup());
    assert!(l.is_closed());
    assert_eq!(l.loops(), 1);
    assert!(l.edges().is_empty());
    let two = compose(&Diagram::tensor(&Diagram::cap(), &Diagram::cap()), &Diagram::tensor(&Diagram::cup(), &Diagram::cup()));
    assert_eq!(two.loops(), 2);
    let id2 = Diagram::identity(2);
    // nested: cap on the outer pair of (cup inside cup) gives one loop... and a leftover cap
    let nested = compose(
        &Diagram::tensor(&Diagram::tensor(&Diagram::identity(1), &Diagram::cap()), &Diagram::identity(1)),
        &Diagram::tensor(&Diagram::cup(), &Diagram::cup()),
    );
    assert_eq!(nested.loops(), 0);
    assert_eq!(nested, Diagram::cup());
    assert!(Diagram::compose(&id2, &Diagram::cup()).is_ok());
    assert!(Diagram::compose(&Diagram::identity(3), &Diagram::cup()).is_err());
}

#[test]
fn snake_is_identity() {
    let left = compose(
        &Diagram::tensor(&Diagram::cap(), &Diagram::identity(1)),
        &Diagram::tensor(&Diagram::identity(1), &Diagram::cup()),
    );
    assert_eq!(left, Diagram::identity(1));
    let right = compose(
        &Diagram::tensor(&Diagram::identity(1), &Diagram::cap()),
        &Diagram::tensor(&Diagram::cup(), &Diagram::identity(1)),
    );
    assert_eq!(right, Diagram::identity(1));
}

#[test]
fn dagger_of_generators() {
    for k in 0..5 {
        for l in 0..5 {
            assert_eq!(Diagram::black_spider(k, l).dagger(), Diagram::black_spider(l, k));
            assert_eq!(Diagram::white_spider(k, l).dagger(), Diagram::white_spider(l, k));
        }
    }
    assert_eq!(Diagram::cup().dagger(), Diagram::cap());
    assert_eq!(Diagram::tensor(&Diagram::identity(1), &Diagram::identity(1)), Diagram::identity(2));
}

#[test]
fn word_laws() {
    let cfg = WordConfig { even_only: false, allow_crossing: true, steps: 6, ..WordConfig::default() };
    for seed in 0..300 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (k, l) = (seed as usize % 3, (seed as usize / 3) % 3);
        let d = random_word(&mut rng, k, l, &cfg);
        d.validate().unwrap();
        assert_eq!(d.dagger().dagger(), d);
        assert_eq!(compose(&Diagram::identity(l), &d), d);
        assert_eq!(compose(&d, &Diagram::identity(k)), d);
        let e = random_word(&mut rng, 1, 2, &cfg);
        let f = random_word(&mut rng, 2, 0, &cfg);
        let lhs = Diagram::tensor(&Diagram::tensor(&d, &e), &f);
        let rhs = Diagram::tensor(&d, &Diagram::tensor(&e, &f));
        assert_eq!(lhs, rhs);
        // dagger is a contravariant functor, up to vertex ids
        let g = random_word(&mut rng, l, 2, &cfg);
        assert_eq!(shape_key(&compose(&g, &d).dagger()), shape_key(&compose(&d.dagger(), &g.dagger())));
    }
}

#[test]
fn face_counts() {
    assert_eq!(Diagram::identity(1).faces().unwrap().len(), 2);
    assert_eq!(compose(&Diagram::cap(), &Diagram::cup()).faces().unwrap().len(), 2);
    assert_eq!(theta().faces().unwrap().len(), 4);
    assert_eq!(Diagram::cup().faces().unwrap().len(), 2);
    assert_eq!(Diagram::black_spider(2, 2).faces().unwrap().len(), 4);
    assert!(Diagram::crossing().faces().is_err());
    assert_eq!(Diagram::crossing().genus(), 1);
}

#[test]
fn every_dart_in_one_face() {
    let cfg = WordConfig { even_only: false, ..WordConfig::default() };
    for seed in 0..200 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_word(&mut rng, 2, 2, &cfg);
        let faces = d.faces().unwrap();
        let mut darts: Vec<Dart> = faces.iter().flat_map(|f| f.darts.clone()).collect();
        let n = darts.len();
        darts.sort();
        darts.dedup();
        assert_eq!(darts.len(), n);
        assert_eq!(n, 2 * (d.edges().len() + d.loops()));
    }
}

#[test]
fn euler_relation_on_words() {
    let cfg = WordConfig { even_only: false, steps: 7, ..WordConfig::default() };
    for seed in 0..300 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (k, l) = (seed as usize % 4, (seed as usize / 4) % 4);
        let d = random_word(&mut rng, k, l, &cfg);
        assert_eq!(d.genus(), 0);
        let v = d.vertices().len() + usize::from(k + l > 0);
        let e = d.edges().len();
        let f = d.region_count().unwrap();
        assert_eq!(v + f, e + 1 + d.component_count(), "seed {seed}");
    }
}

#[test]
fn nonplanar_rotation_is_rejected() {
    // a single vertex whose rotation disagrees with the boundary order
    let v = Vertex { id: 0, color: Color::Black, degree: 3 };
    let edges = vec![
        (Endpoint::slot(0, 0), Endpoint::Lower(0)),
        (Endpoint::slot(0, 1), Endpoint::Upper(0)),
        (Endpoint::slot(0, 2), Endpoint::Lower(1)),
    ];
    let err = Diagram::from_parts(2, 1, vec![v.clone()], edges.clone(), 0, Prefactor::one(), true);
    assert_eq!(err, Err(DiagramError::NotPlanar(1)));
    assert!(Diagram::from_parts(2, 1, vec![v], edges, 0, Prefactor::one(), false).is_ok());
}

#[test]
fn invalid_parts_are_rejected() {
    let v = Vertex { id: 0, color: Color::Black, degree: 2 };
    let e = vec![(Endpoint::slot(0, 0), Endpoint::Lower(0))];
    assert!(matches!(
        Diagram::from_parts(1, 0, vec![v.clone()], e, 0, Prefactor::one(), true),
        Err(DiagramError::EndpointUse(..))
    ));
    let e = vec![(Endpoint::slot(0, 0), Endpoint::slot(0, 5))];
    assert!(matches!(
        Diagram::from_parts(0, 0, vec![v.clone(), v], e, 0, Prefactor::one(), true),
        Err(DiagramError::DuplicateVertex(0))
    ));
}

#[test]
fn region_colouring_examples() {
    let b = Diagram::black_spider(2, 2).region_coloring_pair().unwrap();
    assert_eq!(b, (part(1, 1, &[&[0, 1]]), part(1, 1, &[&[0], &[1]])));
    let w = Diagram::white_spider(2, 2).region_coloring_pair().unwrap();
    assert_eq!(w, (part(1, 1, &[&[0], &[1]]), part(1, 1, &[&[0, 1]])));
    let id = Diagram::identity(2).region_coloring_pair().unwrap();
    assert_eq!(id, (part(1, 1, &[&[0, 1]]), part(1, 1, &[&[0, 1]])));
    let cc = compose(&Diagram::cup(), &Diagram::cap()).region_coloring_pair().unwrap();
    assert_eq!(cc, (part(1, 1, &[&[0], &[1]]), part(1, 1, &[&[0], &[1]])));
    assert!(Diagram::black_spider(1, 1).region_coloring_pair().is_err());
    assert!(Diagram::black_spider(1, 2).region_coloring_pair().is_err());
    assert!(theta().region_coloring_pair().is_err());
}

#[test]
fn text_round_trip() {
    let cfg = WordConfig { even_only: false, allow_crossing: true, ..WordConfig::default() };
    for seed in 0..100 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_word(&mut rng, 1, 3, &cfg)
            .scaled(&Prefactor::new(num_rational::BigRational::new((-3).into(), 7.into()), -3));
        let back: Diagram = d.to_string().parse().unwrap();
        assert_eq!(back, d);
    }
    assert!("lower 1\nupper 1\n".parse::<Diagram>().is_err());
    assert!("lower 1\nupper 1\nedge (lower, 0) (upper, 0)\n".parse::<Diagram>().is_ok());
    assert!(matches!("lower 1\nupper x\n".parse::<Diagram>(), Err(DiagramError::Parse(2, _))));
}

#[test]
fn shape_key_ignores_ids() {
    let a = Diagram::tensor(&theta(), &Diagram::black_spider(0, 0));
    let b = Diagram::tensor(&Diagram::black_spider(0, 0), &theta());
    assert_ne!(a, b);
    assert_eq!(shape_key(&a), shape_key(&b));
    assert_ne!(shape_key(&theta()), shape_key(&Diagram::black_spider(0, 0)));
    assert_ne!(shape_key(&Diagram::black_spider(2, 2)), shape_key(&Diagram::white_spider(2, 2)));
    assert_ne!(shape_key(&Diagram::identity(2)), shape_key(&compose(&Diagram::cup(), &Diagram::cap())));
}
