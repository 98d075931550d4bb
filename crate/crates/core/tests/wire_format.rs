mod common;

use fulcrum::error::Error;
use fulcrum::gf2::CodingVector;
use fulcrum::packet::{wire_size, CodedPacket};
use proptest::prelude::*;

#[test]
fn golden_fixtures_round_trip() {
    for g in common::goldens() {
        common::check_golden(&g).unwrap();
    }
}

#[test]
fn golden_sizes_follow_the_layout() {
    let sizes: Vec<usize> = common::goldens().iter().map(|g| g.bytes().len()).collect();
    assert_eq!(sizes, [17, 17, 53]);
    assert_eq!(wire_size(300, 8, 2), 53);
}

#[test]
fn damaged_fixtures_are_rejected_with_offsets() {
    let good = common::goldens()[2].bytes();

    let mut bad = good.clone();
    bad[2] = 2;
    assert!(matches!(
        CodedPacket::from_bytes(&bad),
        Err(Error::Parse { offset: 2, .. })
    ));

    let mut bad = good.clone();
    let last_vector_byte = 12 + 38;
    bad[last_vector_byte] = 0x1F;
    assert!(matches!(
        CodedPacket::from_bytes(&bad),
        Err(Error::Parse { offset, .. }) if offset == last_vector_byte
    ));

    assert!(matches!(
        CodedPacket::from_bytes(&good[..good.len() - 1]),
        Err(Error::Parse { .. })
    ));
    let mut long = good.clone();
    long.push(0);
    assert!(matches!(
        CodedPacket::from_bytes(&long),
        Err(Error::Parse { .. })
    ));
}

proptest! {
    #[test]
    fn arbitrary_packets_round_trip(
        generation in any::<u32>(),
        n in 1usize..600,
        r in 0usize..=255,
        seed in any::<u64>(),
        payload in proptest::collection::vec(any::<u8>(), 0..64),
    ) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let vector = CodingVector::random(n + r, &mut rng);
        let Ok(p) = CodedPacket::new(generation, n, r, vector, payload) else {
            return Ok(());
        };
        let bytes = p.to_bytes();
        prop_assert_eq!(bytes.len(), wire_size(n, r, p.symbol_size()));
        prop_assert_eq!(CodedPacket::from_bytes(&bytes).unwrap(), p);
    }

    #[test]
    fn arbitrary_bytes_never_panic(bytes in proptest::collection::vec(any::<u8>(), 0..80)) {
        let _ = CodedPacket::from_bytes(&bytes);
    }
}
