#pragma once

#include <vector>

#include "qv/qlaurent.hpp"
#include "qv/verify.hpp"

namespace qv {

struct ModelParams {
    int p;        // chain length parameter, >= 4
    int a;        // 1..p-1
    int b;        // 1..p-1
    int i;        // flavor, 0 or 1
    long long L;  // system size, >= 0
};

// Incidence and Cartan-type matrices. The tilde pair is (p-1)x(p-1) over
// indices 0..p-2 (the 0 row/column couples antisymmetrically to index 2);
// the plain pair is the (p-2)x(p-2) chain over indices 1..p-2, stored
// 0-based as [j-1].
struct FermMatrices {
    int p;
    std::vector<std::vector<long long>> inc_tilde;
    std::vector<std::vector<long long>> cartan_tilde;  // 2*Id - inc_tilde
    std::vector<std::vector<long long>> inc;
    std::vector<std::vector<long long>> cartan;  // 2*Id - inc
};

// Inhomogeneity vectors of the linear system, indices 0..p-2. Entries are
// integers; u[0] + u[1] == 0 always. Unit vectors with index p-1 are treated
// as zero, so a == p-1 or b == p-1 contribute nothing to their theta terms.
struct UAVectors {
    std::vector<long long> u;
    std::vector<long long> A;
};

struct SystemData {
    ModelParams params;
    FermMatrices mats;
    UAVectors ua;
    int mp_parity;  // required parity of m_{p-2}: i unless b == p-1, then 1-i
};

// Validates all parameter bounds (throws std::invalid_argument naming the
// violated bound) and assembles matrices and vectors.
SystemData build_params(int p, int a, int b, int i, long long L);
FermMatrices build_matrices(int p);

// One admissible configuration of the linear system
//   n + m = 1/2 inc_tilde m + L e_0 + 1/2 u
// with all m_j >= 0 and (standard) all n_j >= 0. Vectors have length p-1.
struct NMSolution {
    std::vector<long long> n;
    std::vector<long long> m;
};

enum class EnumMode { standard, modified };

// Window for the modified mode. Solutions with n_0 + m_0 < 0 fall into
// finite groups indexed by (n_2..n_{p-2}, m_{p-2}); within a group n_1 runs
// over a full finite interval. The window caps the group indices; complete
// groups beyond the minimal window sum to zero weight, which the suite
// asserts by doubling the window.
struct ModifiedWindow {
    long long m2_cap;  // inclusive cap on m_2 in the negative sector
    long long n_cap;   // inclusive cap on each free n_j, j >= 2
};
ModifiedWindow default_window(const ModelParams& params);

// Deterministic enumeration, ascending in (m_{p-2}, n_{p-2}, ..., n_1),
// standard sector first. modified additionally yields the negative sector
// (n_0 + m_0 < 0) inside the window (default_window when null).
std::vector<NMSolution> enumerate_solutions(const SystemData& sys, EnumMode mode,
                                            const ModifiedWindow* window = nullptr);

// Linear consequences of the defining system: the two length splits, the
// mixed split, and the partial-sum identities for m_0 and m_k. All must hold
// for every admissible solution.
bool check_consequences(const NMSolution& sol, const SystemData& sys);

// Reference enumerator for the standard mode: scans the full box
// 0 <= m_j <= 2L + p, solves for n row by row, filters integrality and
// nonnegativity. Exponential in p; intended for p <= 5 and small L only.
std::vector<NMSolution> enumerate_box_oracle(const SystemData& sys);

// Equality of enumerate_solutions(standard) with the box oracle, plus the
// consequence identities for every solution, over all (a,b,i), L <= L_max.
VerifyReport verify_nm_oracle(int p, long long L_max);

}  // namespace qv
