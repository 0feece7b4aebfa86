//! Append-only store for terminal records.
//!
//! Records stay in memory until the driver asks a segment to spill; from then
//! on they stream to an anonymous temporary file as little-endian
//! `(child, parent)` pairs, 16 bytes per record.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::types::{NodeId, PairRecord};

/// Bytes per encoded record.
pub const RECORD_BYTES: usize = 16;

/// Environment variable overriding the spill directory.
pub const SPILL_DIR_ENV: &str = "UFS_TMPDIR";

/// Which loop produced a checkpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckpointTag {
    Shuffle,
    Compression,
}

pub fn encode_records<W: Write>(mut w: W, records: &[PairRecord]) -> io::Result<()> {
    let mut buf = [0u8; RECORD_BYTES];
    for r in records {
        buf[..8].copy_from_slice(&r.child.0.to_le_bytes());
        buf[8..].copy_from_slice(&r.parent.0.to_le_bytes());
        w.write_all(&buf)?;
    }
    Ok(())
}

/// Decodes a whole stream. A trailing partial record is an error.
pub fn decode_records<R: Read>(mut r: R) -> io::Result<Vec<PairRecord>> {
    let mut out = Vec::new();
    let mut buf = [0u8; RECORD_BYTES];
    loop {
        let mut filled = 0;
        while filled < RECORD_BYTES {
            let n = r.read(&mut buf[filled..])?;
            if n == 0 {
                break;
            }
            filled += n;
        }
        match filled {
            0 => return Ok(out),
            RECORD_BYTES => {
                let child = u64::from_le_bytes(buf[..8].try_into().unwrap());
                let parent = u64::from_le_bytes(buf[8..].try_into().unwrap());
                out.push(PairRecord { child: NodeId(child), parent: NodeId(parent) });
            }
            _ => return Err(io::Error::new(io::ErrorKind::UnexpectedEof, "truncated checkpoint record")),
        }
    }
}

#[derive(Debug)]
enum Segment {
    Memory(Vec<PairRecord>),
    Spilled { file: BufWriter<File>, len: usize },
}

impl Default for Segment {
    fn default() -> Self {
        Segment::Memory(Vec::new())
    }
}

impl Segment {
    fn len(&self) -> usize {
        match self {
            Segment::Memory(v) => v.len(),
            Segment::Spilled { len, .. } => *len,
        }
    }

    fn append(&mut self, records: &[PairRecord]) -> Result<()> {
        match self {
            Segment::Memory(v) => v.extend_from_slice(records),
            Segment::Spilled { file, len } => {
                encode_records(&mut *file, records)?;
                *len += records.len();
            }
        }
        Ok(())
    }

    fn spill(&mut self, dir: &Path) -> Result<()> {
        if let Segment::Memory(v) = self {
            let mut file = BufWriter::new(tempfile::tempfile_in(dir)?);
            encode_records(&mut file, v)?;
            *self = Segment::Spilled { file, len: v.len() };
        }
        Ok(())
    }

    fn read_all(&mut self) -> Result<Vec<PairRecord>> {
        match self {
            Segment::Memory(v) => Ok(v.clone()),
            Segment::Spilled { file, len } => {
                file.flush()?;
                let mut handle = file.get_ref().try_clone()?;
                handle.seek(SeekFrom::Start(0))?;
                let records = decode_records(BufReader::new(&mut handle).take((*len * RECORD_BYTES) as u64))?;
                // the clone shares the cursor with the writer
                handle.seek(SeekFrom::End(0))?;
                Ok(records)
            }
        }
    }
}

#[derive(Debug)]
pub struct CheckpointStore {
    shuffle: Segment,
    compression: Segment,
    spill_dir: PathBuf,
}

impl Default for CheckpointStore {
    fn default() -> Self {
        Self::new()
    }
}

impl CheckpointStore {
    /// In-memory store that spills to `$UFS_TMPDIR`, or the system temp dir.
    pub fn new() -> Self {
        let dir = std::env::var_os(SPILL_DIR_ENV).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
        Self::with_spill_dir(dir)
    }

    pub fn with_spill_dir(dir: impl Into<PathBuf>) -> Self {
        CheckpointStore { shuffle: Segment::default(), compression: Segment::default(), spill_dir: dir.into() }
    }

    fn segment(&mut self, tag: CheckpointTag) -> &mut Segment {
        match tag {
            CheckpointTag::Shuffle => &mut self.shuffle,
            CheckpointTag::Compression => &mut self.compression,
        }
    }

    pub fn append(&mut self, tag: CheckpointTag, records: &[PairRecord]) -> Result<()> {
        self.segment(tag).append(records)
    }

    /// Moves both segments to disk; later appends stream straight to the files.
    pub fn spill(&mut self) -> Result<()> {
        let dir = self.spill_dir.clone();
        self.shuffle.spill(&dir)?;
        self.compression.spill(&dir)
    }

    pub fn is_spilled(&self) -> bool {
        matches!(self.shuffle, Segment::Spilled { .. })
    }

    pub fn len(&self, tag: CheckpointTag) -> usize {
        match tag {
            CheckpointTag::Shuffle => self.shuffle.len(),
            CheckpointTag::Compression => self.compression.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.shuffle.len() == 0 && self.compression.len() == 0
    }

    /// All records under `tag`, in append order.
    pub fn records(&mut self, tag: CheckpointTag) -> Result<Vec<PairRecord>> {
        self.segment(tag).read_all()
    }

    /// Releases the records under `tag`.
    pub fn clear(&mut self, tag: CheckpointTag) {
        *self.segment(tag) = Segment::default();
    }
}
