#pragma once

#include <cstdint>
#include <vector>

namespace sdof {

using int128 = __int128;

/// Row-generator matrix of an MDS code over the prime field GF(p): every
/// rows-subset of columns is linearly independent mod p. Masking combinations
/// are formed as L = F * G over the reals, so entries are kept as plain
/// integers in [0, p).
struct GeneratorMatrix {
    int rows = 0;
    int cols = 0;
    long long prime = 2;
    std::vector<int> entries;  // row-major, rows*cols

    int at(int r, int c) const { return entries[static_cast<std::size_t>(r) * cols + c]; }
};

/// Least prime >= k (returns 2 for k <= 2).
long long smallest_prime_geq(long long k);

/// j x k Vandermonde matrix over GF(p), p the smallest prime >= k, with
/// evaluation points 0..k-1 (0^0 := 1). Any j columns are independent mod p
/// because every j x j submatrix is a Vandermonde matrix at distinct points.
GeneratorMatrix build_mds_generator(int j, int k);

/// Exhaustively checks that every rows-subset of columns has determinant
/// != 0 (mod p). Throws if an entry lies outside [0, p).
bool verify_mds(const GeneratorMatrix& g);

/// Exact integer determinant of an n x n matrix (row-major) by fraction-free
/// (Bareiss) elimination. Intermediate values are minors of the input, so for
/// the entry ranges used here (|a_ij| < 13, n <= 12) they fit an int128.
int128 det_exact(const std::vector<long long>& m, int n);

}  // namespace sdof
