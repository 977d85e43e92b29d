//! Byte-level run of the caching scheme a PDA describes.
//!
//! Every file is cut into `F` packets. User `k` caches packet `j` of every
//! file when `p[j][k]` is a star. For each color `s` the server broadcasts
//! the XOR of packet `j` of the file user `k` wants, over all cells
//! `p[j][k] = s`. A user recovers a missing packet by XOR-ing out every
//! other contribution to its slot, each of which it must have cached.
//!
//! Files, packets, rows and users are 0-based here.

use std::collections::BTreeMap;

use num::rational::Ratio;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::pda::PdaArray;
use crate::Execution;

/// Demand sweeps enumerate every vector up to this many.
pub const EXHAUSTIVE_LIMIT: u64 = 4096;
/// Size of a seeded random sweep when enumeration is too large.
pub const RANDOM_SWEEP: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("library is empty")]
    EmptyLibrary,
    #[error("file {index} has {len} bytes, expected {expected}")]
    UnequalFiles { index: usize, len: usize, expected: usize },
    #[error("file length {file_len} is not a positive multiple of F = {f}")]
    Divisibility { file_len: usize, f: usize },
    #[error("demand vector has {got} entries for {expected} users")]
    DemandLength { got: usize, expected: usize },
    #[error("user {user} demands file {file}, library has {files}")]
    DemandRange { user: usize, file: usize, files: usize },
    #[error("inputs belong to different arrays or libraries")]
    ShapeMismatch,
    #[error("user {user} cannot decode packet {packet} from slot {slot}: packet {missing_packet} of file {missing_file} is not cached")]
    MissingPacket { user: usize, packet: usize, slot: u32, missing_file: usize, missing_packet: usize },
    #[error("user {user} reconstructed packet {packet} of file {file} incorrectly")]
    Mismatch { user: usize, file: usize, packet: usize },
}

/// `N` equal-length files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileLibrary {
    files: Vec<Vec<u8>>,
}

impl FileLibrary {
    pub fn from_files(files: Vec<Vec<u8>>) -> Result<Self, SimError> {
        let expected = files.first().ok_or(SimError::EmptyLibrary)?.len();
        if let Some((index, f)) = files.iter().enumerate().find(|(_, f)| f.len() != expected) {
            return Err(SimError::UnequalFiles { index, len: f.len(), expected });
        }
        Ok(Self { files })
    }

    /// Pseudorandom contents, a deterministic function of `seed`.
    pub fn random(file_count: usize, file_len: usize, seed: u64) -> Result<Self, SimError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let files = (0..file_count)
            .map(|_| {
                let mut f = vec![0u8; file_len];
                rng.fill_bytes(&mut f);
                f
            })
            .collect();
        Self::from_files(files)
    }

    pub fn file_count(&self) -> usize {
        self.files.len()
    }

    pub fn file_len(&self) -> usize {
        self.files[0].len()
    }

    pub fn file(&self, i: usize) -> &[u8] {
        &self.files[i]
    }

    fn packet_len(&self, f: usize) -> Result<usize, SimError> {
        let file_len = self.file_len();
        if f == 0 || file_len == 0 || !file_len.is_multiple_of(f) {
            return Err(SimError::Divisibility { file_len, f });
        }
        Ok(file_len / f)
    }

    fn packet(&self, file: usize, packet: usize, len: usize) -> &[u8] {
        &self.files[file][packet * len..(packet + 1) * len]
    }
}

/// One requested file per user.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DemandVector(Vec<usize>);

impl DemandVector {
    pub fn new(demands: Vec<usize>) -> Self {
        Self(demands)
    }

    /// From 1-based file numbers.
    pub fn from_one_based(demands: &[usize]) -> Option<Self> {
        demands.iter().map(|&d| d.checked_sub(1)).collect::<Option<Vec<_>>>().map(Self)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn check(&self, users: usize, files: usize) -> Result<(), SimError> {
        if self.0.len() != users {
            return Err(SimError::DemandLength { got: self.0.len(), expected: users });
        }
        match self.0.iter().enumerate().find(|(_, &d)| d >= files) {
            Some((user, &file)) => Err(SimError::DemandRange { user, file, files }),
            None => Ok(()),
        }
    }
}

impl std::fmt::Display for DemandVector {
    /// 1-based, comma separated.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let shown: Vec<String> = self.0.iter().map(|d| (d + 1).to_string()).collect();
        write!(f, "({})", shown.join(","))
    }
}

/// Cached packets per user, keyed by `(file, packet)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheState {
    packet_len: usize,
    users: Vec<BTreeMap<(usize, usize), Vec<u8>>>,
}

impl CacheState {
    pub fn user_count(&self) -> usize {
        self.users.len()
    }

    pub fn packet_ids(&self, user: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.users[user].keys().copied()
    }

    pub fn get(&self, user: usize, file: usize, packet: usize) -> Option<&[u8]> {
        self.users[user].get(&(file, packet)).map(Vec::as_slice)
    }

    pub fn bytes_stored(&self, user: usize) -> usize {
        self.users[user].len() * self.packet_len
    }
}

/// One cell feeding a broadcast: user `user` wants packet `packet` of
/// file `file`, and the cell sits in row `packet`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Contribution {
    pub user: usize,
    pub file: usize,
    pub packet: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slot {
    pub color: u32,
    pub contributions: Vec<Contribution>,
    pub payload: Vec<u8>,
}

impl Slot {
    /// `(file, packet)` pairs XOR-ed into this slot, sorted.
    pub fn packets(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.contributions.iter().map(|c| (c.file, c.packet)).collect();
        v.sort_unstable();
        v
    }
}

/// Slot `s - 1` carries color `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BroadcastLog {
    pub slots: Vec<Slot>,
}

impl BroadcastLog {
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn bytes_sent(&self) -> usize {
        self.slots.iter().map(|s| s.payload.len()).sum()
    }
}

fn xor_into(acc: &mut [u8], x: &[u8]) {
    acc.iter_mut().zip(x).for_each(|(a, b)| *a ^= b);
}

/// Stores packet `j` of every file at user `k` whenever `p[j][k]` is a
/// star.
pub fn place(p: &PdaArray, lib: &FileLibrary) -> Result<CacheState, SimError> {
    let packet_len = lib.packet_len(p.rows())?;
    let mut users = vec![BTreeMap::new(); p.cols()];
    for (j, k, e) in p.entries() {
        if e.is_star() {
            for i in 0..lib.file_count() {
                users[k].insert((i, j), lib.packet(i, j, packet_len).to_vec());
            }
        }
    }
    Ok(CacheState { packet_len, users })
}

/// One slot per color: the XOR of packet `j` of file `d[k]` over the
/// cells `p[j][k] = s`.
pub fn deliver(p: &PdaArray, lib: &FileLibrary, d: &DemandVector) -> Result<BroadcastLog, SimError> {
    let packet_len = lib.packet_len(p.rows())?;
    d.check(p.cols(), lib.file_count())?;
    let mut slots: Vec<Slot> = (1..=p.color_count())
        .map(|color| Slot { color, contributions: Vec::new(), payload: vec![0; packet_len] })
        .collect();
    for (j, k, e) in p.entries() {
        if let Some(s) = e.color() {
            let slot = &mut slots[s as usize - 1];
            let file = d.0[k];
            xor_into(&mut slot.payload, lib.packet(file, j, packet_len));
            slot.contributions.push(Contribution { user: k, file, packet: j });
        }
    }
    Ok(BroadcastLog { slots })
}

/// Reconstructs each user's demanded file from its cache and the
/// broadcasts. Every contribution to a slot other than the user's own
/// must come out of the cache; a missing one is an error naming the
/// user, the packet being decoded and the slot.
pub fn decode(
    p: &PdaArray,
    caches: &CacheState,
    log: &BroadcastLog,
    d: &DemandVector,
) -> Result<Vec<Vec<u8>>, SimError> {
    if caches.user_count() != p.cols() || log.len() != p.color_count() as usize {
        return Err(SimError::ShapeMismatch);
    }
    d.check(p.cols(), usize::MAX)?;
    let len = caches.packet_len;
    (0..p.cols())
        .map(|k| {
            let want = d.0[k];
            let mut file = Vec::with_capacity(len * p.rows());
            for j in 0..p.rows() {
                match p.get(j, k).color() {
                    None => file.extend_from_slice(caches.get(k, want, j).ok_or(SimError::ShapeMismatch)?),
                    Some(s) => {
                        let slot = &log.slots[s as usize - 1];
                        let mut packet = slot.payload.clone();
                        for c in &slot.contributions {
                            if (c.user, c.packet) == (k, j) {
                                continue;
                            }
                            let cached = caches.get(k, c.file, c.packet).ok_or(SimError::MissingPacket {
                                user: k,
                                packet: j,
                                slot: s,
                                missing_file: c.file,
                                missing_packet: c.packet,
                            })?;
                            xor_into(&mut packet, cached);
                        }
                        file.extend_from_slice(&packet);
                    }
                }
            }
            Ok(file)
        })
        .collect()
}

/// Places, delivers and decodes, then checks every user got the exact
/// bytes of the file it asked for.
pub fn verify_roundtrip(p: &PdaArray, lib: &FileLibrary, d: &DemandVector) -> Result<(), SimError> {
    let caches = place(p, lib)?;
    let log = deliver(p, lib, d)?;
    let files = decode(p, &caches, &log, d)?;
    let len = caches.packet_len;
    for (user, got) in files.iter().enumerate() {
        let file = d.0[user];
        let want = lib.file(file);
        if let Some(packet) = (0..p.rows()).find(|&j| got[j * len..(j + 1) * len] != want[j * len..(j + 1) * len]) {
            return Err(SimError::Mismatch { user, file, packet });
        }
    }
    Ok(())
}

/// Runs [`verify_roundtrip`] for each demand vector; results keep input
/// order.
pub fn simulate_demands(
    p: &PdaArray,
    lib: &FileLibrary,
    demands: &[DemandVector],
    exec: Execution,
) -> Vec<Result<(), SimError>> {
    exec.map(demands, |d| verify_roundtrip(p, lib, d))
}

/// All `files^users` demand vectors in lexicographic order.
pub fn exhaustive_demands(users: usize, files: usize) -> Vec<DemandVector> {
    let total = (files as u64).checked_pow(users as u32).unwrap_or(u64::MAX);
    assert!(total <= 1 << 24, "too many demand vectors to enumerate");
    let mut out = Vec::with_capacity(total as usize);
    let mut cur = vec![0usize; users];
    for _ in 0..total {
        out.push(DemandVector(cur.clone()));
        for slot in cur.iter_mut().rev() {
            *slot += 1;
            if *slot < files {
                break;
            }
            *slot = 0;
        }
    }
    out
}

/// `count` uniformly random demand vectors from a seeded generator.
pub fn random_demands(users: usize, files: usize, count: usize, seed: u64) -> Vec<DemandVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| DemandVector((0..users).map(|_| rng.gen_range(0..files)).collect())).collect()
}

/// Exhaustive when there are at most [`EXHAUSTIVE_LIMIT`] vectors,
/// otherwise [`RANDOM_SWEEP`] seeded random ones.
pub fn demand_sweep(users: usize, files: usize, seed: u64) -> Vec<DemandVector> {
    match (files as u64).checked_pow(users as u32) {
        Some(total) if total <= EXHAUSTIVE_LIMIT => exhaustive_demands(users, files),
        _ => random_demands(users, files, RANDOM_SWEEP, seed),
    }
}

/// Broadcast volume in file units, `S / F` for one byte per packet.
pub fn measured_rate(log: &BroadcastLog, lib: &FileLibrary) -> Ratio<u64> {
    Ratio::new(log.bytes_sent() as u64, lib.file_len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::trivial_pda;
    use crate::pda::fixtures;

    fn one_based(d: &[usize]) -> DemandVector {
        DemandVector::from_one_based(d).unwrap()
    }

    /// `(file, packet)` in 1-based form, like `W_{i,j}`.
    fn w(i: usize, j: usize) -> (usize, usize) {
        (i - 1, j - 1)
    }

    #[test]
    fn four_user_caches() {
        let p = fixtures::four_by_four();
        let lib = FileLibrary::random(2, 4, 7).unwrap();
        let caches = place(&p, &lib).unwrap();
        let user = |k: usize| caches.packet_ids(k).collect::<Vec<_>>();
        let odd = vec![w(1, 1), w(1, 3), w(2, 1), w(2, 3)];
        let even = vec![w(1, 2), w(1, 4), w(2, 2), w(2, 4)];
        assert_eq!(user(0), odd);
        assert_eq!(user(2), odd);
        assert_eq!(user(1), even);
        assert_eq!(user(3), even);
        assert_eq!(caches.bytes_stored(0), 2 * 2);
    }

    #[test]
    fn four_user_broadcasts() {
        let p = fixtures::four_by_four();
        let lib = FileLibrary::random(2, 4, 7).unwrap();
        let log = deliver(&p, &lib, &one_based(&[1, 2, 2, 1])).unwrap();
        let got: Vec<_> = log.slots.iter().map(Slot::packets).collect();
        let mut want =
            vec![vec![w(1, 2), w(2, 1)], vec![w(1, 4), w(2, 3)], vec![w(2, 2), w(1, 1)], vec![w(2, 4), w(1, 3)]];
        want.iter_mut().for_each(|v| v.sort_unstable());
        assert_eq!(got, want);

        let all_ones = deliver(&p, &lib, &one_based(&[1, 1, 1, 1])).unwrap();
        assert_eq!(all_ones.slots[0].packets(), [w(1, 1), w(1, 2)]);
        assert_eq!(all_ones.slots[1].packets(), [w(1, 3), w(1, 4)]);
        assert_eq!(measured_rate(&log, &lib), Ratio::from_integer(1));
    }

    #[test]
    fn first_user_subtracts_its_cached_packet() {
        let p = fixtures::four_by_four();
        let lib = FileLibrary::random(2, 4, 11).unwrap();
        let d = one_based(&[1, 2, 2, 1]);
        let caches = place(&p, &lib).unwrap();
        let log = deliver(&p, &lib, &d).unwrap();
        let mut slot = log.slots[0].payload.clone();
        xor_into(&mut slot, caches.get(0, 1, 0).unwrap());
        assert_eq!(slot, lib.file(0)[1..2]);
        assert_eq!(decode(&p, &caches, &log, &d).unwrap()[0], lib.file(0));
    }

    #[test]
    fn trivial_delivery() {
        let p = trivial_pda();
        let lib = FileLibrary::random(1, 2, 3).unwrap();
        let log = deliver(&p, &lib, &one_based(&[1, 1])).unwrap();
        assert_eq!(log.len(), 1);
        assert_eq!(log.slots[0].packets(), [w(1, 1), w(1, 2)]);
        assert_eq!(log.slots[0].payload, [lib.file(0)[0] ^ lib.file(0)[1]]);
    }

    #[test]
    fn degenerate_caches() {
        let all_star = PdaArray::from_grid_str("*\n*\n*").unwrap();
        let lib = FileLibrary::random(2, 3, 1).unwrap();
        assert_eq!(place(&all_star, &lib).unwrap().packet_ids(0).count(), 6);
        let no_star = PdaArray::from_grid_str("1 2 3").unwrap();
        let caches = place(&no_star, &lib).unwrap();
        assert!((0..3).all(|k| caches.packet_ids(k).count() == 0));
        assert!(verify_roundtrip(&no_star, &lib, &DemandVector::new(vec![0, 1, 1])).is_ok());
    }

    #[test]
    fn exhaustive_sweep_on_four_users() {
        let p = fixtures::four_by_four();
        let lib = FileLibrary::random(2, 4, 5).unwrap();
        let demands = demand_sweep(4, 2, 0);
        assert_eq!(demands.len(), 16);
        assert!(simulate_demands(&p, &lib, &demands, Execution::Sequential).iter().all(Result::is_ok));
    }

    #[test]
    fn larger_packets_and_one_file() {
        let p = fixtures::four_by_four();
        let lib = FileLibrary::random(1, 12, 5).unwrap();
        assert!(verify_roundtrip(&p, &lib, &DemandVector::new(vec![0; 4])).is_ok());
    }

    #[test]
    fn broken_arrays_fail_to_decode() {
        let lib = FileLibrary::random(2, 2, 9).unwrap();
        // Two equal colors without star corners.
        let no_corners = PdaArray::from_grid_str("1 2\n2 1").unwrap();
        let err = verify_roundtrip(&no_corners, &lib, &DemandVector::new(vec![0, 1])).unwrap_err();
        assert!(matches!(err, SimError::MissingPacket { .. }));
        // A color repeated in a column.
        let col = PdaArray::from_grid_str("1 *\n1 *").unwrap();
        let err = verify_roundtrip(&col, &lib, &DemandVector::new(vec![0, 0])).unwrap_err();
        assert_eq!(err, SimError::MissingPacket { user: 0, packet: 0, slot: 1, missing_file: 0, missing_packet: 1 });
    }

    #[test]
    fn input_errors() {
        let p = fixtures::four_by_four();
        let lib = FileLibrary::random(2, 6, 0).unwrap();
        assert!(matches!(place(&p, &lib), Err(SimError::Divisibility { .. })));
        let lib = FileLibrary::random(2, 4, 0).unwrap();
        assert!(matches!(deliver(&p, &lib, &DemandVector::new(vec![0; 3])), Err(SimError::DemandLength { .. })));
        assert!(matches!(deliver(&p, &lib, &DemandVector::new(vec![0, 0, 2, 0])), Err(SimError::DemandRange { .. })));
        assert_eq!(FileLibrary::from_files(vec![]), Err(SimError::EmptyLibrary));
        assert!(FileLibrary::from_files(vec![vec![1], vec![1, 2]]).is_err());
        assert_eq!(DemandVector::from_one_based(&[0]), None);
    }

    #[test]
    fn seeded_libraries_repeat() {
        assert_eq!(FileLibrary::random(3, 8, 42), FileLibrary::random(3, 8, 42));
        assert_eq!(random_demands(5, 3, 10, 1), random_demands(5, 3, 10, 1));
        assert_eq!(demand_sweep(7, 4, 1).len(), RANDOM_SWEEP);
    }
}
