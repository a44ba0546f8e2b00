// Copyright 2026 The Authors.
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

#include "fair_ksub/kic.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "fair_ksub/error.h"
#include "fair_ksub/hashing.h"
#include "fair_ksub/io.h"

namespace fair_ksub {

void KicInstance::Validate() const {
  if (node_count < 0 || topics < 1) {
    throw Error(ErrorCode::kValidation,
                "k-IC instance needs node_count >= 0 and topics >= 1");
  }
  for (size_t id = 0; id < edges.size(); ++id) {
    const KicEdge& edge = edges[id];
    if (edge.source < 0 || edge.source >= node_count || edge.target < 0 ||
        edge.target >= node_count) {
      throw Error(ErrorCode::kValidation,
                  "edge " + std::to_string(id) + " has an endpoint outside [0, " +
                      std::to_string(node_count) + ")");
    }
    if (static_cast<int>(edge.probabilities.size()) != topics) {
      throw Error(ErrorCode::kValidation,
                  "edge " + std::to_string(id) + " needs " +
                      std::to_string(topics) + " probabilities");
    }
    for (double p : edge.probabilities) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::kValidation,
                    "edge " + std::to_string(id) +
                        " has a probability outside [0, 1]");
      }
    }
  }
}

struct KicSpreadOracle::Workspace {
  explicit Workspace(int nodes) : topic_mark(nodes, 0), union_mark(nodes, 0) {}

  std::vector<uint32_t> topic_mark;
  std::vector<uint32_t> union_mark;
  uint32_t topic_epoch = 0;
  uint32_t union_epoch = 0;
  std::vector<int> frontier;
};

KicSpreadOracle::KicSpreadOracle(KicInstance instance, int mc_samples,
                                 uint64_t seed, RealizationMode mode, int jobs)
    : instance_(std::move(instance)),
      mc_samples_(mc_samples),
      seed_(seed),
      mode_(mode),
      jobs_(std::max(1, jobs)) {
  instance_.Validate();
  if (mc_samples_ < 1) {
    throw Error(ErrorCode::kInvalidParameter, "mc_samples must be >= 1");
  }
  offset_.assign(instance_.node_count + 1, 0);
  for (const KicEdge& edge : instance_.edges) ++offset_[edge.source + 1];
  for (int v = 0; v < instance_.node_count; ++v) offset_[v + 1] += offset_[v];
  adj_.resize(instance_.edges.size());
  std::vector<int> fill(offset_.begin(), offset_.end() - 1);
  for (size_t id = 0; id < instance_.edges.size(); ++id) {
    adj_[fill[instance_.edges[id].source]++] = static_cast<int>(id);
  }
}

int KicSpreadOracle::SimulateSample(const std::vector<std::vector<int>>& seeds,
                                    uint64_t stream, int sample,
                                    Workspace& ws) const {
  ++ws.union_epoch;
  int reached = 0;
  for (int topic = 0; topic < instance_.topics; ++topic) {
    if (seeds[topic].empty()) continue;
    ++ws.topic_epoch;
    ws.frontier.clear();
    auto visit = [&](int v) {
      if (ws.topic_mark[v] == ws.topic_epoch) return;
      ws.topic_mark[v] = ws.topic_epoch;
      ws.frontier.push_back(v);
      if (ws.union_mark[v] != ws.union_epoch) {
        ws.union_mark[v] = ws.union_epoch;
        ++reached;
      }
    };
    for (int v : seeds[topic]) visit(v);
    for (size_t head = 0; head < ws.frontier.size(); ++head) {
      const int v = ws.frontier[head];
      for (int i = offset_[v]; i < offset_[v + 1]; ++i) {
        const int id = adj_[i];
        const KicEdge& edge = instance_.edges[id];
        if (ws.topic_mark[edge.target] == ws.topic_epoch) continue;
        const double p = edge.probabilities[topic];
        if (p <= 0.0) continue;
        const double coin = UnitFromBits(
            HashAll({stream, static_cast<uint64_t>(sample),
                     static_cast<uint64_t>(topic), static_cast<uint64_t>(id)}));
        if (coin < p) visit(edge.target);
      }
    }
  }
  return reached;
}

SpreadEstimate KicSpreadOracle::Estimate(const KAssignment& s) {
  CheckDimensions(*this, s);
  std::vector<std::vector<int>> seeds(instance_.topics);
  for (ElementId v = 0; v < s.n(); ++v) {
    if (s.at(v) != kUnassigned) seeds[s.at(v) - 1].push_back(v);
  }
  if (s.empty()) return {};

  uint64_t stream = seed_;
  if (mode_ == RealizationMode::kIndependent) {
    stream = HashCombine(seed_, calls_.fetch_add(1, std::memory_order_relaxed));
  }

  std::vector<int> reached(mc_samples_);
  auto run = [&](int begin, int end) {
    Workspace ws(instance_.node_count);
    for (int r = begin; r < end; ++r) {
      reached[r] = SimulateSample(seeds, stream, r, ws);
    }
  };
  const int workers = std::min(jobs_, mc_samples_);
  if (workers <= 1) {
    run(0, mc_samples_);
  } else {
    const int chunk = (mc_samples_ + workers - 1) / workers;
    std::vector<std::jthread> threads;
    for (int begin = 0; begin < mc_samples_; begin += chunk) {
      threads.emplace_back(run, begin, std::min(mc_samples_, begin + chunk));
    }
  }

  // Integer sums keep the mean identical for any worker count.
  int64_t sum = 0;
  for (int c : reached) sum += c;
  SpreadEstimate estimate;
  estimate.mean = static_cast<double>(sum) / mc_samples_;
  if (mc_samples_ > 1) {
    double sq = 0.0;
    for (int c : reached) sq += (c - estimate.mean) * (c - estimate.mean);
    estimate.std_error = std::sqrt(sq / (mc_samples_ - 1) / mc_samples_);
  }
  return estimate;
}

double KicSpreadOracle::Evaluate(const KAssignment& s) {
  return Estimate(s).mean;
}

double KicSpread(const KicInstance& instance, const KAssignment& s,
                 int mc_samples, uint64_t seed) {
  KicSpreadOracle oracle(instance, mc_samples, seed);
  return oracle.Evaluate(s);
}

KicInstance GenKicInstance(const KicGenParams& params, uint64_t seed) {
  if (params.nodes < 1 || params.topics < 1 || params.mean_out_degree < 0.0 ||
      params.p_min < 0.0 || params.p_max > 1.0 || params.p_min > params.p_max) {
    throw Error(ErrorCode::kInvalidParameter, "invalid k-IC generator params");
  }
  std::mt19937_64 rng(seed);
  std::poisson_distribution<int> degree(params.mean_out_degree);
  std::uniform_int_distribution<int> node(0, params.nodes - 1);
  std::uniform_real_distribution<double> prob(params.p_min, params.p_max);

  KicInstance inst;
  inst.node_count = params.nodes;
  inst.topics = params.topics;
  std::vector<char> used(params.nodes, 0);
  std::vector<int> targets;
  for (int v = 0; v < params.nodes; ++v) {
    const int d = std::min(degree(rng), params.nodes - 1);
    targets.clear();
    while (static_cast<int>(targets.size()) < d) {
      const int w = node(rng);
      if (w == v || used[w]) continue;
      used[w] = 1;
      targets.push_back(w);
    }
    for (int w : targets) {
      used[w] = 0;
      KicEdge edge{v, w, std::vector<double>(params.topics)};
      for (double& p : edge.probabilities) p = prob(rng);
      inst.edges.push_back(std::move(edge));
    }
  }
  return inst;
}

namespace {

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> tokens;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

template <typename T>
bool ParseNumber(std::string_view token, T& out) {
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

[[noreturn]] void FailLine(int line, const std::string& what) {
  throw Error(ErrorCode::kParse, "line " + std::to_string(line) + ": " + what);
}

}  // namespace

KicInstance ParseKicGraph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;
  KicInstance inst;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tokens = SplitWhitespace(line);
    if (tokens.empty() || tokens[0].front() == '#') continue;
    if (!have_header) {
      if (tokens.size() != 2 || !ParseNumber(tokens[0], inst.node_count) ||
          !ParseNumber(tokens[1], inst.topics)) {
        FailLine(line_no, "expected header \"n k\"");
      }
      if (inst.node_count < 0 || inst.topics < 1) {
        FailLine(line_no, "header needs n >= 0 and k >= 1");
      }
      have_header = true;
      continue;
    }
    if (static_cast<int>(tokens.size()) != 2 + inst.topics) {
      FailLine(line_no, "expected \"src dst\" and " +
                            std::to_string(inst.topics) + " probabilities, got " +
                            std::to_string(tokens.size()) + " fields");
    }
    KicEdge edge;
    if (!ParseNumber(tokens[0], edge.source) ||
        !ParseNumber(tokens[1], edge.target)) {
      FailLine(line_no, "bad node id");
    }
    if (edge.source < 0 || edge.source >= inst.node_count || edge.target < 0 ||
        edge.target >= inst.node_count) {
      throw Error(ErrorCode::kValidation,
                  "line " + std::to_string(line_no) + ": node id out of range");
    }
    edge.probabilities.resize(inst.topics);
    for (int i = 0; i < inst.topics; ++i) {
      if (!ParseNumber(tokens[2 + i], edge.probabilities[i])) {
        FailLine(line_no, "bad probability \"" + std::string(tokens[2 + i]) + "\"");
      }
      const double p = edge.probabilities[i];
      if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::kValidation, "line " + std::to_string(line_no) +
                                                ": probability outside [0, 1]");
      }
    }
    inst.edges.push_back(std::move(edge));
  }
  if (!have_header) {
    throw Error(ErrorCode::kParse, "graph file has no header line");
  }
  return inst;
}

KicInstance LoadKicGraph(const std::string& path, uint64_t max_bytes) {
  return ParseKicGraph(ReadFileCapped(path, max_bytes));
}

std::string SerializeKicGraph(const KicInstance& instance) {
  std::string out = std::to_string(instance.node_count) + " " +
                    std::to_string(instance.topics) + "\n";
  char buf[64];
  for (const KicEdge& edge : instance.edges) {
    out += std::to_string(edge.source);
    out += ' ';
    out += std::to_string(edge.target);
    for (double p : edge.probabilities) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), p);
      out += ' ';
      out.append(buf, ptr);
    }
    out += '\n';
  }
  return out;
}

void WriteKicGraph(const KicInstance& instance, const std::string& path) {
  WriteFile(path, SerializeKicGraph(instance));
}

}  // namespace fair_ksub
