use std::io::Cursor;

use ufs::engine::{decode_records, encode_records, CheckpointStore, CheckpointTag, RECORD_BYTES};
use ufs::generators::{generate, GenSpec};
use ufs::{run, EngineConfig, PairRecord};

#[test]
fn record_layout_is_little_endian_pairs() {
    let mut buf = Vec::new();
    encode_records(&mut buf, &[PairRecord::new(1, 0x0102_0304_0506_0708)]).unwrap();
    assert_eq!(buf.len(), RECORD_BYTES);
    assert_eq!(&buf[..8], &1u64.to_le_bytes());
    assert_eq!(&buf[8..], &0x0102_0304_0506_0708u64.to_le_bytes());
    assert_eq!(decode_records(Cursor::new(&buf)).unwrap(), vec![PairRecord::new(1, 0x0102_0304_0506_0708)]);
    assert!(decode_records(Cursor::new(&buf[..10])).is_err());
}

#[test]
fn spilled_store_returns_appended_records() {
    let dir = tempfile::tempdir().unwrap();
    let mut store = CheckpointStore::with_spill_dir(dir.path());
    let first: Vec<PairRecord> = (0..100).map(|i| PairRecord::new(i, i / 2)).collect();
    store.append(CheckpointTag::Shuffle, &first).unwrap();
    store.spill().unwrap();
    assert!(store.is_spilled());
    store.append(CheckpointTag::Shuffle, &[PairRecord::new(7, 7)]).unwrap();
    store.append(CheckpointTag::Compression, &[PairRecord::new(3, 1)]).unwrap();
    let mut want = first.clone();
    want.push(PairRecord::new(7, 7));
    assert_eq!(store.records(CheckpointTag::Shuffle).unwrap(), want);
    // reading twice is fine
    assert_eq!(store.records(CheckpointTag::Shuffle).unwrap().len(), 101);
    assert_eq!(store.records(CheckpointTag::Compression).unwrap(), vec![PairRecord::new(3, 1)]);
    store.clear(CheckpointTag::Shuffle);
    assert_eq!(store.len(CheckpointTag::Shuffle), 0);
}

#[test]
fn tiny_budget_gives_same_answer() {
    let (edges, _) = generate(&GenSpec::sparse(20_000, 18_000, 4)).unwrap();
    let base = EngineConfig { worker_count: 1, ..EngineConfig::with_partitions(16) };
    let mem = run(&edges, &base).unwrap();
    let disk = run(&edges, &EngineConfig { memory_budget: Some(10), ..base }).unwrap();
    assert_eq!(mem.0, disk.0);
    assert_eq!(mem.1.shuffle_records_per_round, disk.1.shuffle_records_per_round);
}
