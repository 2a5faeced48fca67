mod common;

use beacon_core::attraction::attracts;
use beacon_core::generators::{random_rectilinear, random_x_monotone};
use beacon_core::kernel::{kernel, kernel_oracle, kernel_region_oracle, same_kernel};
use beacon_core::polygon::RectPolygon;
use common::random_interior_point;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn corpus() -> Vec<RectPolygon> {
    let mut out = Vec::new();
    for seed in 0..300u64 {
        out.push(random_rectilinear(4 + 2 * (seed as usize % 29), seed).unwrap());
    }
    for seed in 0..200u64 {
        out.push(random_x_monotone(4 + 2 * (seed as usize % 29), seed).unwrap());
    }
    out
}

#[test]
fn kernel_matches_oracle_on_random_polygons() {
    let mut nonempty = 0;
    for p in corpus() {
        let k = kernel(&p);
        let oracle = kernel_region_oracle(&p);
        assert!(same_kernel(&k, &oracle), "mismatch on {:?}", p.vertices());
        if let Some(r) = &k.region {
            nonempty += 1;
            assert_eq!(Some(r.canonical()), kernel_oracle(&p).region.map(|q| q.canonical()));
        }
    }
    assert!(nonempty > 100, "only {nonempty} nonempty kernels");
}

#[test]
fn no_reflex_edge_means_whole_polygon() {
    for p in corpus().into_iter().filter(|p| !p.has_reflex_edge()) {
        assert_eq!(kernel(&p).region.unwrap().canonical(), p.canonical());
    }
}

#[test]
fn kernel_beacons_attract_everything() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut tested = 0;
    for p in corpus().into_iter().filter(|p| p.has_reflex_edge()) {
        let Some(k) = kernel(&p).region else { continue };
        if tested == 20 {
            break;
        }
        tested += 1;
        let mut beacons: Vec<_> = (0..8).map(|_| random_interior_point(&k, &mut rng)).collect();
        beacons.extend(k.vertices().iter().take(2).cloned());
        let samples: Vec<_> = (0..500).map(|_| random_interior_point(&p, &mut rng)).collect();
        for b in &beacons {
            for q in samples.iter().chain(p.vertices()) {
                assert!(attracts(&p, b, q).unwrap(), "{b} misses {q} in {:?}", p.vertices());
            }
        }
    }
    assert_eq!(tested, 20);
}

#[test]
fn beacons_outside_kernel_miss_something() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut tried = 0;
    let mut found = 0;
    for p in corpus().into_iter().filter(|p| p.has_reflex_edge()).take(30) {
        let k = kernel(&p);
        let samples: Vec<_> = (0..400).map(|_| random_interior_point(&p, &mut rng)).collect();
        let outside: Vec<_> = samples.iter().filter(|b| !k.contains(b)).take(10).collect();
        for b in outside {
            tried += 1;
            if samples.iter().chain(p.vertices()).any(|q| !attracts(&p, b, q).unwrap()) {
                found += 1;
            }
        }
    }
    // finite sampling may miss a witness; require nearly all
    assert!(found * 100 >= tried * 95, "witnesses for {found} of {tried}");
}
