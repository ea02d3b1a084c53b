//! Substreams: same (seed, stream) gives the same draws on any thread.

use granular_growth::randkit::{RngStream, StreamDomain};
use rand::Rng;
use rayon::prelude::*;

fn main() {
    let firm = |i: u64| {
        let mut rng = RngStream::derived(7, StreamDomain::Firm, i).rng();
        (0..4).map(|_| rng.gen::<u32>()).collect::<Vec<_>>()
    };
    let serial: Vec<_> = (0..1000).map(firm).collect();
    let parallel: Vec<_> = (0..1000u64).into_par_iter().map(firm).collect();
    assert_eq!(serial, parallel);
    println!("firm 0: {:?}", serial[0]);
    println!("firm 1: {:?}", serial[1]);
    let other = RngStream::derived(7, StreamDomain::Arrivals, 0);
    println!("arrivals stream id {:#018x}, firm 0 stream id {:#018x}", other.stream_id, RngStream::derived(7, StreamDomain::Firm, 0).stream_id);
}
