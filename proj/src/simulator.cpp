// Copyright 2026 The emre-kit developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "emrekit/simulator.hpp"

#include <algorithm>
#include <cmath>

namespace emrekit {

DensityMatrix::DensityMatrix(int n_qubits, std::uint64_t basis_state) : n_(n_qubits) {
  require(n_qubits >= 1 && n_qubits <= kMaxQubits, ErrorCode::InvalidArgument,
          "register size must be between 1 and 10 qubits");
  const std::size_t d = std::size_t{1} << n_;
  require(basis_state < d, ErrorCode::InvalidArgument,
          "input basis state out of range");
  a_.assign(d * d, cplx(0, 0));
  a_[basis_state * d + basis_state] = 1.0;
}

double DensityMatrix::trace_real() const {
  const std::size_t d = std::size_t{1} << n_;
  double t = 0;
  for (std::size_t i = 0; i < d; ++i) t += a_[i * d + i].real();
  return t;
}

double DensityMatrix::purity() const {
  double p = 0;
  for (const auto& v : a_) p += std::norm(v);
  return p;
}

Matrix DensityMatrix::as_matrix() const {
  const int d = dim();
  Matrix m(d, d);
  m.a = a_;
  return m;
}

namespace {

struct LocalIndexer {
  int k = 0;                      // number of target qubits
  std::size_t dim = 0;            // 2^n
  std::vector<std::size_t> offs;  // 2^k target-bit patterns as index masks
  std::vector<std::size_t> rest;  // 2^(n-k) non-target patterns

  LocalIndexer(int n, const std::vector<int>& qubits) {
    k = static_cast<int>(qubits.size());
    require(k >= 1 && k <= 2, ErrorCode::InvalidArgument,
            "local channels act on one or two qubits");
    dim = std::size_t{1} << n;
    std::vector<std::size_t> bits;
    bits.reserve(qubits.size());
    for (int q : qubits) {
      require(q >= 0 && q < n, ErrorCode::DimensionMismatch,
              "target qubit out of range");
      bits.push_back(std::size_t{1} << (n - 1 - q));
    }
    const int kk = 1 << k;
    offs.resize(static_cast<std::size_t>(kk));
    for (int t = 0; t < kk; ++t) {
      std::size_t o = 0;
      for (int b = 0; b < k; ++b) {
        // first listed qubit = most significant local bit
        if (t & (1 << (k - 1 - b))) o |= bits[static_cast<size_t>(b)];
      }
      offs[static_cast<std::size_t>(t)] = o;
    }
    std::size_t targ_mask = 0;
    for (auto b : bits) targ_mask |= b;
    rest.reserve(dim >> k);
    for (std::size_t m = 0; m < dim; ++m) {
      if ((m & targ_mask) == 0) rest.push_back(m);
    }
  }
};

// Index tables depend only on (n, targets); sampling re-applies the same
// few target sets millions of times, so memoize per thread.
const LocalIndexer& indexer_for(int n, const std::vector<int>& qubits) {
  thread_local std::vector<std::pair<std::uint32_t, LocalIndexer>> cache;
  std::uint32_t key = static_cast<std::uint32_t>(n) << 16;
  key |= static_cast<std::uint32_t>(qubits[0] + 1) << 8;
  if (qubits.size() > 1) key |= static_cast<std::uint32_t>(qubits[1] + 1);
  for (const auto& [k, ix] : cache) {
    if (k == key) return ix;
  }
  cache.emplace_back(key, LocalIndexer(n, qubits));
  return cache.back().second;
}

template <int KK>
void apply_block(std::vector<cplx>& a, const Matrix& superop,
                 const LocalIndexer& ix) {
  constexpr int SS = KK * KK;
  const std::size_t d = ix.dim;
  cplx in[SS], out[SS];
  for (std::size_t rr : ix.rest) {
    for (std::size_t cc : ix.rest) {
      for (int tr = 0; tr < KK; ++tr) {
        const std::size_t row = (rr | ix.offs[static_cast<size_t>(tr)]) * d + cc;
        for (int tc = 0; tc < KK; ++tc)
          in[tr * KK + tc] = a[row + ix.offs[static_cast<size_t>(tc)]];
      }
      const cplx* srow = superop.a.data();
      for (int o = 0; o < SS; ++o, srow += SS) {
        cplx acc = 0;
        for (int i = 0; i < SS; ++i) acc += srow[i] * in[i];
        out[o] = acc;
      }
      for (int tr = 0; tr < KK; ++tr) {
        const std::size_t row = (rr | ix.offs[static_cast<size_t>(tr)]) * d + cc;
        for (int tc = 0; tc < KK; ++tc)
          a[row + ix.offs[static_cast<size_t>(tc)]] = out[tr * KK + tc];
      }
    }
  }
}

}  // namespace

namespace {

// Detects one-nonzero-per-row structure (unitary conjugations of permutation
// matrices, e.g. CNOT and SWAP); those rows cost one multiply instead of SS.
bool monomial_structure(const Matrix& superop, int ss, int* src, cplx* phase) {
  for (int o = 0; o < ss; ++o) {
    int found = -1;
    for (int i = 0; i < ss; ++i) {
      if (superop(o, i) != cplx(0, 0)) {
        if (found >= 0) return false;
        found = i;
      }
    }
    if (found < 0) return false;
    src[o] = found;
    phase[o] = superop(o, found);
  }
  return true;
}

void apply_monomial(std::vector<cplx>& a, const LocalIndexer& ix, int kk,
                    const int* src, const cplx* phase) {
  const std::size_t d = ix.dim;
  const int ss = kk * kk;
  cplx in[16], out[16];
  for (std::size_t rr : ix.rest) {
    for (std::size_t cc : ix.rest) {
      for (int tr = 0; tr < kk; ++tr) {
        const std::size_t row = (rr | ix.offs[static_cast<size_t>(tr)]) * d + cc;
        for (int tc = 0; tc < kk; ++tc)
          in[tr * kk + tc] = a[row + ix.offs[static_cast<size_t>(tc)]];
      }
      for (int o = 0; o < ss; ++o) out[o] = phase[o] * in[src[o]];
      for (int tr = 0; tr < kk; ++tr) {
        const std::size_t row = (rr | ix.offs[static_cast<size_t>(tr)]) * d + cc;
        for (int tc = 0; tc < kk; ++tc)
          a[row + ix.offs[static_cast<size_t>(tc)]] = out[tr * kk + tc];
      }
    }
  }
}

}  // namespace

void DensityMatrix::apply_local_superop(const Matrix& superop,
                                        const std::vector<int>& qubits) {
  const LocalIndexer& ix = indexer_for(n_, qubits);
  const int kk = 1 << ix.k;  // local Hilbert dimension
  const int ss = kk * kk;    // local superoperator dimension
  require(superop.rows == ss && superop.cols == ss, ErrorCode::DimensionMismatch,
          "local superoperator has the wrong shape");
  if (ix.k == 1) {
    apply_block<2>(a_, superop, ix);
    return;
  }
  int src[16];
  cplx phase[16];
  if (monomial_structure(superop, ss, src, phase)) {
    apply_monomial(a_, ix, kk, src, phase);
  } else {
    apply_block<4>(a_, superop, ix);
  }
}

double DensityMatrix::expectation(const PauliString& p) const {
  require(p.n_qubits() == n_, ErrorCode::DimensionMismatch,
          "observable length must match the register");
  const std::size_t d = std::size_t{1} << n_;
  std::size_t flip = 0;
  std::vector<std::pair<std::size_t, char>> nontrivial;
  for (int q = 0; q < n_; ++q) {
    char c = p.letters[static_cast<size_t>(q)];
    if (c == 'I') continue;
    std::size_t bit = std::size_t{1} << (n_ - 1 - q);
    if (c == 'X' || c == 'Y') flip |= bit;
    nontrivial.emplace_back(bit, c);
  }
  // Tr[P rho] = sum_b phase(b) rho(b, b ^ flip), where P|b> = phase(b) |b ^ flip>.
  cplx total = 0;
  for (std::size_t b = 0; b < d; ++b) {
    std::size_t col = b ^ flip;
    cplx phase(1, 0);
    for (const auto& [bit, c] : nontrivial) {
      bool set = (b & bit) != 0;
      if (c == 'Z') {
        if (set) phase = -phase;
      } else if (c == 'Y') {
        phase *= set ? cplx(0, -1) : cplx(0, 1);
      }
    }
    total += phase * a_[b * d + col];
  }
  return total.real();
}

bool DensityMatrix::valid_state(double tol) const {
  Matrix m = as_matrix();
  if (!is_hermitian(m, tol)) return false;
  if (std::abs(trace_real() - 1.0) > tol) return false;
  auto evals = hermitian_eigenvalues(m);
  return evals.empty() || evals.front() >= -tol;
}

KrausChannel ideal_gate_channel(const Gate& gate) {
  return channel_from_unitary(gate.matrix());
}

Matrix embed_operator(const Matrix& op, const std::vector<int>& qubits, int n_qubits) {
  const int k = static_cast<int>(qubits.size());
  require(op.rows == (1 << k) && op.square(), ErrorCode::DimensionMismatch,
          "embed: operator shape does not match the qubit list");
  require(n_qubits >= 1 && n_qubits <= kMaxQubits, ErrorCode::InvalidArgument,
          "register size must be between 1 and 10 qubits");
  std::vector<std::size_t> bits;
  std::size_t targ_mask = 0;
  for (int q : qubits) {
    require(q >= 0 && q < n_qubits, ErrorCode::DimensionMismatch,
            "embed: qubit index out of range");
    bits.push_back(std::size_t{1} << (n_qubits - 1 - q));
    targ_mask |= bits.back();
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  auto local_index = [&](std::size_t full) {
    int loc = 0;
    for (int b = 0; b < k; ++b) {
      loc <<= 1;
      if (full & bits[static_cast<size_t>(b)]) loc |= 1;
    }
    return loc;
  };
  Matrix out(static_cast<int>(dim), static_cast<int>(dim));
  for (std::size_t r = 0; r < dim; ++r) {
    const int lr = local_index(r);
    const std::size_t rest = r & ~targ_mask;
    for (int lc = 0; lc < (1 << k); ++lc) {
      cplx v = op(lr, lc);
      if (v == cplx(0, 0)) continue;
      std::size_t c = rest;
      for (int b = 0; b < k; ++b) {
        if (lc & (1 << (k - 1 - b))) c |= bits[static_cast<size_t>(b)];
      }
      out(static_cast<int>(r), static_cast<int>(c)) = v;
    }
  }
  return out;
}

KrausChannel embed_channel(const KrausChannel& ch, const std::vector<int>& qubits,
                           int n_qubits) {
  std::vector<Matrix> ops;
  ops.reserve(ch.ops.size());
  for (const auto& k : ch.ops) ops.push_back(embed_operator(k, qubits, n_qubits));
  return KrausChannel(std::move(ops));
}

KrausChannel noisy_gate_channel(const Gate& gate, const NoiseModel& noise) {
  KrausChannel unitary = ideal_gate_channel(gate);
  if (!noise.noisy_for_arity(gate.arity())) return unitary;
  return compose(make_attached_noise(noise, gate.arity()), unitary);
}

std::vector<LocalChannelStep> gate_term_steps(const Gate& gate,
                                              const NoiseModel& noise,
                                              const std::string& pauli_label) {
  const int arity = gate.arity();
  std::string label = pauli_label.empty()
                          ? std::string(static_cast<size_t>(arity), 'I')
                          : pauli_label;
  require(static_cast<int>(label.size()) == arity, ErrorCode::InvalidArgument,
          "Pauli correction length must match the gate arity");
  auto pauli_index = [](char c) {
    switch (c) {
      case 'I': return 0;
      case 'X': return 1;
      case 'Y': return 2;
      case 'Z': return 3;
    }
    fail(ErrorCode::InvalidArgument, "bad Pauli letter in correction label");
  };

  const bool noisy = noise.noisy_for_arity(arity);
  std::vector<LocalChannelStep> steps;
  if (arity == 1) {
    KrausChannel ch = channel_from_unitary(pauli(pauli_index(label[0])) *
                                           gate.matrix());
    if (noisy) ch = compose(make_attached_noise(noise, 1), ch);
    steps.push_back({gate.qubits, superop_from_kraus(ch)});
    return steps;
  }

  // Two-qubit gates: keep the (monomial) unitary separate and attach the
  // correction-and-noise channel per qubit when the noise is local.
  steps.push_back({gate.qubits, superop_from_kraus(ideal_gate_channel(gate))});
  const bool joint =
      noisy && (noise.attachment == NoiseAttachment::AfterEveryGateJoint ||
                noise.kind == NoiseKind::DepolarizingDDim);
  if (joint) {
    KrausChannel correction = channel_from_unitary(
        kron(pauli(pauli_index(label[0])), pauli(pauli_index(label[1]))));
    steps.push_back({gate.qubits, superop_from_kraus(compose(
                                      make_attached_noise(noise, 2), correction))});
    return steps;
  }
  for (int i = 0; i < 2; ++i) {
    int pi = pauli_index(label[static_cast<size_t>(i)]);
    if (!noisy && pi == 0) continue;
    KrausChannel ch = channel_from_unitary(pauli(pi));
    if (noisy) ch = compose(make_noise_channel(noise), ch);
    steps.push_back({{gate.qubits[static_cast<size_t>(i)]}, superop_from_kraus(ch)});
  }
  return steps;
}

double exact_expectation(const CircuitIR& circuit,
                         const std::map<int, Matrix>* substitutions) {
  circuit.validate();
  DensityMatrix rho(circuit.n_qubits, circuit.input_basis_state);
  for (size_t i = 0; i < circuit.gates.size(); ++i) {
    const Gate& g = circuit.gates[i];
    if (substitutions != nullptr) {
      auto it = substitutions->find(static_cast<int>(i));
      if (it != substitutions->end()) {
        rho.apply_local_superop(it->second, g.qubits);
        continue;
      }
    }
    for (const auto& step : gate_term_steps(g, circuit.noise, "")) {
      rho.apply_local_superop(step.superop, step.qubits);
    }
  }
  return rho.expectation(circuit.observable);
}

double exact_expectation_with_noise(const CircuitIR& circuit,
                                    const NoiseModel& noise) {
  CircuitIR c = circuit;
  c.noise = noise;
  return exact_expectation(c);
}

namespace {

// Keep whole-prefix caching below ~256 MiB.
bool prefix_cache_fits(int n_qubits, std::size_t n_gates) {
  std::size_t state_bytes = (std::size_t{1} << (2 * n_qubits)) * sizeof(cplx);
  return state_bytes * (n_gates + 1) <= (std::size_t{256} << 20);
}

}  // namespace

ShotStats run_shots(const CircuitIR& circuit, const CompiledPlan& plan,
                    std::int64_t shots, std::uint64_t seed, ShotMode mode,
                    int threads, bool want_records) {
  require(shots >= 1, ErrorCode::InvalidArgument, "shots must be >= 1");
  require(plan.gates.size() == circuit.gates.size(), ErrorCode::InvalidArgument,
          "plan must cover every gate");
  const std::size_t n_gates = circuit.gates.size();

  // Gates with more than one alternative, in circuit order; these are the
  // ones that consume randomness.
  std::vector<std::size_t> sampled_gates;
  for (std::size_t i = 0; i < n_gates; ++i) {
    if (plan.gates[i].terms.size() > 1) sampled_gates.push_back(i);
  }

  auto apply_term = [](DensityMatrix& rho, const GateTerm& term) {
    for (const auto& step : term.steps) {
      rho.apply_local_superop(step.superop, step.qubits);
    }
  };

  // Evolution under every gate's base term, checkpointed before each gate.
  // A sampled trajectory only re-evolves from its first deviation.
  const bool cache = prefix_cache_fits(circuit.n_qubits, n_gates);
  std::vector<DensityMatrix> prefix;
  DensityMatrix base_state(circuit.n_qubits, circuit.input_basis_state);
  if (cache) prefix.reserve(n_gates + 1);
  for (std::size_t i = 0; i < n_gates; ++i) {
    if (cache) prefix.push_back(base_state);
    const PlannedGate& pg = plan.gates[i];
    apply_term(base_state, pg.terms[static_cast<size_t>(pg.base_index)]);
  }
  if (cache) prefix.push_back(base_state);
  const double base_value = base_state.expectation(circuit.observable);

  ShotStats stats;
  stats.shots = shots;
  stats.values.assign(static_cast<std::size_t>(shots), 0.0);
  if (want_records) stats.records.resize(static_cast<std::size_t>(shots));

  parallel_for(shots, threads, [&](std::int64_t begin, std::int64_t end) {
    std::vector<std::int32_t> choices(sampled_gates.size());
    for (std::int64_t shot = begin; shot < end; ++shot) {
      RngStream rng = RngStream::derive(seed, {static_cast<std::uint64_t>(shot)});
      int sign = 1;
      std::int64_t first_dev = -1;
      for (std::size_t s = 0; s < sampled_gates.size(); ++s) {
        const PlannedGate& pg = plan.gates[sampled_gates[s]];
        double u = rng.next_double();
        int pick = 0;
        double acc = 0;
        for (size_t t = 0; t < pg.terms.size(); ++t) {
          acc += pg.terms[t].probability;
          if (u < acc) {
            pick = static_cast<int>(t);
            break;
          }
          pick = static_cast<int>(t);  // saturate to last on rounding
        }
        choices[s] = pick;
        sign *= pg.terms[static_cast<size_t>(pick)].sign;
        if (pick != pg.base_index && first_dev < 0)
          first_dev = static_cast<std::int64_t>(sampled_gates[s]);
      }

      double value;
      if (first_dev < 0) {
        value = base_value;
      } else {
        std::size_t start = cache ? static_cast<std::size_t>(first_dev) : 0;
        DensityMatrix rho = cache
                                ? prefix[start]
                                : DensityMatrix(circuit.n_qubits,
                                                circuit.input_basis_state);
        std::size_t sampled_pos = 0;
        while (sampled_pos < sampled_gates.size() && sampled_gates[sampled_pos] < start)
          ++sampled_pos;
        for (std::size_t i = start; i < n_gates; ++i) {
          const PlannedGate& pg = plan.gates[i];
          int pick = pg.base_index;
          if (sampled_pos < sampled_gates.size() && sampled_gates[sampled_pos] == i) {
            pick = choices[sampled_pos];
            ++sampled_pos;
          }
          apply_term(rho, pg.terms[static_cast<size_t>(pick)]);
        }
        value = rho.expectation(circuit.observable);
      }

      double outcome;
      if (mode == ShotMode::SingleShot) {
        double p_plus = std::clamp(0.5 * (1.0 + value), 0.0, 1.0);
        outcome = rng.next_double() < p_plus ? 1.0 : -1.0;
      } else {
        outcome = value;
      }
      stats.values[static_cast<std::size_t>(shot)] =
          plan.gamma_incl * sign * outcome;
      if (want_records) {
        Trajectory& rec = stats.records[static_cast<std::size_t>(shot)];
        rec.choices.assign(choices.begin(), choices.end());
        rec.sign = sign;
        rec.weight = plan.gamma_incl;
        rec.outcome = outcome;
      }
    }
  });

  double sum = 0;
  for (double v : stats.values) sum += v;
  stats.mean = sum / static_cast<double>(shots);
  double ss = 0;
  for (double v : stats.values) ss += (v - stats.mean) * (v - stats.mean);
  if (shots > 1) {
    stats.std_error = std::sqrt(ss / (static_cast<double>(shots) *
                                      static_cast<double>(shots - 1)));
  }
  return stats;
}

}  // namespace emrekit
