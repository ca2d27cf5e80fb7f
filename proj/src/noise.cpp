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

#include "emrekit/noise.hpp"

#include <cmath>
#include <sstream>

namespace emrekit {

namespace {

void require_probability(double p, const char* what) {
  require(p >= 0.0 && p <= 1.0, ErrorCode::InvalidProbability,
          std::string(what) + " must lie in [0, 1]");
}

// Weyl shift/phase operators on dimension d; W(0,0) is the identity.
Matrix weyl(int d, int a, int b) {
  Matrix w(d, d);
  const double theta = 2.0 * M_PI / d;
  for (int j = 0; j < d; ++j) {
    cplx phase = std::exp(cplx(0, theta * b * j));
    w((j + a) % d, j) = phase;
  }
  return w;
}

}  // namespace

NoiseModel NoiseModel::none() { return NoiseModel{}; }

NoiseModel NoiseModel::depolarizing_local(double p) {
  NoiseModel m;
  m.kind = NoiseKind::DepolarizingLocal;
  m.p = p;
  m.validate();
  return m;
}

NoiseModel NoiseModel::depolarizing_ddim(double p, int dim) {
  NoiseModel m;
  m.kind = NoiseKind::DepolarizingDDim;
  m.p = p;
  m.dim = dim;
  m.validate();
  return m;
}

NoiseModel NoiseModel::dephasing(double p) {
  NoiseModel m;
  m.kind = NoiseKind::Dephasing;
  m.p = p;
  m.validate();
  return m;
}

NoiseModel NoiseModel::inhomogeneous_pauli(double px, double py, double pz) {
  NoiseModel m;
  m.kind = NoiseKind::InhomogeneousPauli;
  m.px = px;
  m.py = py;
  m.pz = pz;
  m.p = px + py + pz;
  m.validate();
  return m;
}

NoiseModel NoiseModel::probabilistic_generic(double p, KrausChannel channel) {
  NoiseModel m;
  m.kind = NoiseKind::ProbabilisticGeneric;
  m.p = p;
  m.dim = channel.dim_in;
  m.generic = std::make_shared<KrausChannel>(std::move(channel));
  m.validate();
  return m;
}

void NoiseModel::validate() const {
  switch (kind) {
    case NoiseKind::None:
      return;
    case NoiseKind::DepolarizingLocal:
    case NoiseKind::Dephasing:
      require_probability(p, "noise probability");
      return;
    case NoiseKind::DepolarizingDDim:
      require_probability(p, "noise probability");
      require(dim >= 2, ErrorCode::InvalidArgument, "dimension must be >= 2");
      return;
    case NoiseKind::InhomogeneousPauli:
      require_probability(px, "p_x");
      require_probability(py, "p_y");
      require_probability(pz, "p_z");
      require(px + py + pz <= 1.0 + 1e-15, ErrorCode::InvalidProbability,
              "p_x + p_y + p_z must not exceed 1");
      return;
    case NoiseKind::ProbabilisticGeneric:
      require_probability(p, "noise probability");
      require(generic != nullptr, ErrorCode::InvalidArgument,
              "probabilistic noise needs a payload channel");
      require(generic->dim_in == generic->dim_out, ErrorCode::DimensionMismatch,
              "payload channel must preserve dimension");
      require(generic->completeness_defect() <= 1e-9,
              ErrorCode::CompletenessViolation,
              "payload channel must be trace preserving");
      return;
  }
}

double NoiseModel::parameter_p() const {
  if (kind == NoiseKind::None) return 0.0;
  if (kind == NoiseKind::InhomogeneousPauli) return px + py + pz;
  return p;
}

double NoiseModel::total_probability() const {
  switch (kind) {
    case NoiseKind::None:
      return 0.0;
    case NoiseKind::DepolarizingLocal:
      // Probabilistic form: with probability 3p/4 one of X, Y, Z acts.
      return 0.75 * p;
    case NoiseKind::DepolarizingDDim:
      return p * (static_cast<double>(dim) * dim - 1) / (static_cast<double>(dim) * dim);
    case NoiseKind::Dephasing:
      return 0.5 * p;
    case NoiseKind::InhomogeneousPauli:
      return px + py + pz;
    case NoiseKind::ProbabilisticGeneric:
      return p;
  }
  return 0.0;
}

bool NoiseModel::pauli_diagonal() const {
  switch (kind) {
    case NoiseKind::None:
    case NoiseKind::DepolarizingLocal:
    case NoiseKind::Dephasing:
    case NoiseKind::InhomogeneousPauli:
      return true;
    case NoiseKind::DepolarizingDDim:
      return dim == 2;
    case NoiseKind::ProbabilisticGeneric:
      return false;
  }
  return false;
}

bool NoiseModel::noisy_for_arity(int arity) const {
  if (!enabled()) return false;
  return arity == 1 ? noisy_single : noisy_two;
}

bool NoiseModel::mitigated_for_arity(int arity) const {
  if (!noisy_for_arity(arity)) return false;
  return arity == 1 ? mitigate_single : mitigate_two;
}

std::string NoiseModel::label() const {
  std::ostringstream out;
  switch (kind) {
    case NoiseKind::None:
      return "none";
    case NoiseKind::DepolarizingLocal:
      out << "depolarizing_local(p=" << p << ")";
      break;
    case NoiseKind::DepolarizingDDim:
      out << "depolarizing_ddim(p=" << p << ",d=" << dim << ")";
      break;
    case NoiseKind::Dephasing:
      out << "dephasing(p=" << p << ")";
      break;
    case NoiseKind::InhomogeneousPauli:
      out << "inhomogeneous_pauli(" << px << "," << py << "," << pz << ")";
      break;
    case NoiseKind::ProbabilisticGeneric:
      out << "probabilistic(p=" << p << ")";
      break;
  }
  return out.str();
}

KrausChannel make_noise_channel(const NoiseModel& model) {
  model.validate();
  switch (model.kind) {
    case NoiseKind::None:
      return channel_from_unitary(Matrix::identity(2));
    case NoiseKind::DepolarizingLocal: {
      double p = model.p;
      std::vector<Matrix> ops;
      ops.push_back(std::sqrt(1.0 - 0.75 * p) * pauli(0));
      for (int i = 1; i < 4; ++i) ops.push_back(std::sqrt(0.25 * p) * pauli(i));
      return KrausChannel(std::move(ops));
    }
    case NoiseKind::DepolarizingDDim: {
      const int d = model.dim;
      const double d2 = static_cast<double>(d) * d;
      std::vector<Matrix> ops;
      ops.push_back(std::sqrt(1.0 - model.p + model.p / d2) *
                    Matrix::identity(d));
      const double w = std::sqrt(model.p) / d;
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          if (a == 0 && b == 0) continue;
          ops.push_back(w * weyl(d, a, b));
        }
      return KrausChannel(std::move(ops));
    }
    case NoiseKind::Dephasing: {
      std::vector<Matrix> ops;
      ops.push_back(std::sqrt(1.0 - 0.5 * model.p) * pauli(0));
      ops.push_back(std::sqrt(0.5 * model.p) * pauli(3));
      return KrausChannel(std::move(ops));
    }
    case NoiseKind::InhomogeneousPauli: {
      std::vector<Matrix> ops;
      ops.push_back(std::sqrt(1.0 - model.px - model.py - model.pz) * pauli(0));
      if (model.px > 0) ops.push_back(std::sqrt(model.px) * pauli(1));
      if (model.py > 0) ops.push_back(std::sqrt(model.py) * pauli(2));
      if (model.pz > 0) ops.push_back(std::sqrt(model.pz) * pauli(3));
      return KrausChannel(std::move(ops));
    }
    case NoiseKind::ProbabilisticGeneric: {
      std::vector<Matrix> ops;
      const int d = model.generic->dim_in;
      ops.push_back(std::sqrt(1.0 - model.p) * Matrix::identity(d));
      for (const auto& k : model.generic->ops)
        ops.push_back(std::sqrt(model.p) * k);
      return KrausChannel(std::move(ops));
    }
  }
  fail(ErrorCode::UnsupportedNoise, "unknown noise kind");
}

KrausChannel make_attached_noise(const NoiseModel& model, int arity) {
  require(arity == 1 || arity == 2, ErrorCode::InvalidArgument,
          "noise attachment supports 1- and 2-qubit gates");
  const int dim = 1 << arity;
  if (!model.noisy_for_arity(arity)) {
    return channel_from_unitary(Matrix::identity(dim));
  }
  if (model.attachment == NoiseAttachment::AfterEveryGateJoint) {
    require(model.kind == NoiseKind::DepolarizingLocal ||
                model.kind == NoiseKind::DepolarizingDDim,
            ErrorCode::UnsupportedNoise,
            "joint attachment is defined for depolarizing noise");
    NoiseModel joint = NoiseModel::depolarizing_ddim(model.p, dim);
    return make_noise_channel(joint);
  }
  if (model.kind == NoiseKind::DepolarizingDDim) {
    require(model.dim == dim, ErrorCode::DimensionMismatch,
            "d-dimensional depolarizing noise does not match gate arity");
    return make_noise_channel(model);
  }
  KrausChannel single = make_noise_channel(model);
  require(single.dim_in == 2, ErrorCode::DimensionMismatch,
          "local attachment needs a single-qubit noise channel");
  if (arity == 1) return single;
  return channel_kron(single, single);
}

std::vector<double> noise_ptm_diagonal(const NoiseModel& model) {
  require(model.pauli_diagonal(), ErrorCode::NonPauliNoise,
          "noise is not diagonal in the Pauli basis");
  switch (model.kind) {
    case NoiseKind::None:
      return {1, 1, 1, 1};
    case NoiseKind::DepolarizingLocal:
      return {1, 1 - model.p, 1 - model.p, 1 - model.p};
    case NoiseKind::DepolarizingDDim:
      return {1, 1 - model.p, 1 - model.p, 1 - model.p};
    case NoiseKind::Dephasing:
      return {1, 1 - model.p, 1 - model.p, 1};
    case NoiseKind::InhomogeneousPauli:
      return {1, 1 - 2 * (model.py + model.pz), 1 - 2 * (model.px + model.pz),
              1 - 2 * (model.px + model.py)};
    default:
      fail(ErrorCode::NonPauliNoise, "noise is not diagonal in the Pauli basis");
  }
}

}  // namespace emrekit
