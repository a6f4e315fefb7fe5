use apexis_core::generate::{generate, GenFilter, GenSpec};
use std::time::Instant;

fn main() {
    for (n, e0, e1, d, filt) in [
        (6usize, 9usize, 9usize, 1usize, GenFilter::NonPlanar),
        (8, 11, 11, 1, GenFilter::NonPlanar),
        (10, 12, 12, 1, GenFilter::NonPlanar),
        (11, 12, 12, 1, GenFilter::NonPlanar),
        (9, 20, 20, 3, GenFilter::None),
        (10, 15, 20, 3, GenFilter::None),
    ] {
        let t = Instant::now();
        let stats = generate(
            &GenSpec { n, edges: (e0, e1), min_degree: d, filter: filt },
            &|_| {},
        )
        .unwrap();
        println!(
            "n={} e={}..{} d>={} -> emitted={} nodes={} in {:.2?}",
            n, e0, e1, d, stats.emitted, stats.nodes, t.elapsed()
        );
    }
}
