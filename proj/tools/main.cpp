// Copyright 2026 The Semfrag Authors
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

// semfrag — single entry point for the dataset engine.
//
//   generate   build fragment datasets (logic and monotonicity variants)
//   verify     re-derive labels with the bounded-model oracle
//   polarize   arrow-annotate sentences of the controlled grammar
//   stats      dataset statistics (pairs, vocabulary, lengths, labels)
//   audit      artifact probes (majority, hypothesis/premise-only, PMI)
//   select     lossless-inoculation model selection over score tables
//
// Exit codes: 0 success; 1 validation or usage error; 2 verification
// disagreement (verify found at least one oracle mismatch).
//
// Every run logs its resolved configuration and seed to stderr; data and
// reports go to stdout (or files), so pipelines can separate the two.
// Environment overrides are limited to SEMFRAG_OUT_DIR and SEMFRAG_WORKERS,
// and an explicit flag always wins over the environment.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "semfrag/audit.hpp"
#include "semfrag/config.hpp"
#include "semfrag/dataset.hpp"
#include "semfrag/errors.hpp"
#include "semfrag/formula.hpp"
#include "semfrag/inoculation.hpp"
#include "semfrag/inventory.hpp"
#include "semfrag/jsonl.hpp"
#include "semfrag/knowledge_base.hpp"
#include "semfrag/lexicon.hpp"
#include "semfrag/logic_fragments.hpp"
#include "semfrag/mono_fol.hpp"
#include "semfrag/oracle.hpp"
#include "semfrag/polarity.hpp"
#include "semfrag/rng.hpp"
#include "semfrag/substitution.hpp"
#include "semfrag/types.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Sentences fed to verify/polarize may use numerals beyond the generation
// default (1..5); load the lexicon with this generous ceiling instead.
constexpr int kStandaloneNumericMax = 20;

void log_line(const std::string& msg) {
  std::cerr << "[semfrag] " << msg << "\n";
}

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v != nullptr && *v != '\0' ? std::string(v) : fallback;
}

int resolve_workers(int flag_value, bool flag_given) {
  if (flag_given) return flag_value;
  std::string env = env_or("SEMFRAG_WORKERS", "");
  if (env.empty()) return 1;
  try {
    int n = std::stoi(env);
    if (n >= 1) return n;
  } catch (const std::exception&) {
  }
  throw semfrag::ConfigError("SEMFRAG_WORKERS must be a positive integer, got '" +
                             env + "'");
}

std::string resolve_out_dir(const std::string& flag_value, bool flag_given) {
  if (flag_given) return flag_value;
  return env_or("SEMFRAG_OUT_DIR", "out");
}

semfrag::ConfigMap load_config(const std::string& path,
                               const std::vector<std::string>& overrides) {
  semfrag::ConfigMap map = path.empty()
                               ? semfrag::ConfigMap::parse("", "<empty>")
                               : semfrag::ConfigMap::load(path);
  for (const std::string& kv : overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw semfrag::ConfigError("--set expects key=value, got '" + kv + "'");
    }
    map.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return map;
}

void reject_unconsumed(const semfrag::ConfigMap& map) {
  std::vector<std::string> left = map.unconsumed();
  if (left.empty()) return;
  std::string msg = "unrecognized config key(s):";
  for (const std::string& k : left) msg += " " + k;
  throw semfrag::ConfigError(msg);
}

std::vector<std::string> read_premise_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw semfrag::DataError("cannot open seed premises: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = semfrag::canonicalize(line);
    if (t.empty() || line[0] == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

std::string describe(const semfrag::GeneratorConfig& cfg) {
  std::ostringstream os;
  os << "n_train=" << cfg.n_train << " n_dev=" << cfg.n_dev
     << " n_test=" << cfg.n_test << " numeric_min=" << cfg.numeric_min
     << " numeric_max=" << cfg.numeric_max;
  if (cfg.list_len_min > 0 || cfg.list_len_max > 0) {
    os << " list_len_min=" << cfg.list_len_min
       << " list_len_max=" << cfg.list_len_max;
  }
  return os.str();
}

std::string describe(const semfrag::MonoConfig& cfg) {
  std::ostringstream os;
  os << "quantifier_inventory=";
  for (std::size_t i = 0; i < cfg.quantifier_inventory.size(); ++i) {
    os << (i ? "," : "") << cfg.quantifier_inventory[i];
  }
  os << " max_relative_clauses=" << cfg.max_relative_clauses
     << " numeric_min=" << cfg.numeric_min << " numeric_max=" << cfg.numeric_max
     << " p_transitive=" << cfg.p_transitive << " p_vp_neg=" << cfg.p_vp_neg
     << " p_copula=" << cfg.p_copula << " p_pred_not=" << cfg.p_pred_not
     << " p_adj=" << cfg.p_adj << " p_modifier=" << cfg.p_modifier
     << " w_src=" << cfg.w_src << " w_orc=" << cfg.w_orc << " w_pp=" << cfg.w_pp
     << " p_object_animate=" << cfg.p_object_animate;
  return os.str();
}

std::string describe(const semfrag::SearchConfig& cfg) {
  std::ostringstream os;
  os << "depth=" << cfg.depth
     << " max_pairs_per_premise=" << cfg.max_pairs_per_premise
     << " max_expansions=" << cfg.max_expansions;
  return os.str();
}

std::string describe(const semfrag::MonoBuildConfig& cfg) {
  std::ostringstream os;
  os << "n_train=" << cfg.n_train << " n_dev=" << cfg.n_dev
     << " n_test=" << cfg.n_test << " seed_depth=" << cfg.seed_depth
     << " seed_cap=" << cfg.seed_cap << " max_premises=" << cfg.max_premises
     << " seed_premises=" << cfg.seed_premises.size();
  return os.str();
}

// ---------------------------------------------------------------------------
// generate

struct GenerateOpts {
  std::vector<std::string> fragments;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = "out";
  bool out_given = false;
  std::string data_dir = "data";
  std::string format = "jsonl";
  std::uint64_t seed = 2026;
  bool seed_given = false;
  int depth = 2;
  bool depth_given = false;
  int workers = 1;
  bool workers_given = false;
  bool paraphrase_dev_flag = false;
};

struct MonoPlan {
  semfrag::MonoConfig config;
  semfrag::SearchConfig search;
  semfrag::MonoBuildConfig build;
  std::string seed_file;
};

void write_splits(const std::vector<semfrag::NLIPair>& pairs,
                  const fs::path& out_dir, semfrag::FragmentId fragment,
                  semfrag::FileFormat format) {
  std::string ext =
      format == semfrag::FileFormat::kJsonl ? ".jsonl" : ".tsv";
  for (semfrag::Split split :
       {semfrag::Split::kTrain, semfrag::Split::kDev, semfrag::Split::kTest}) {
    std::vector<semfrag::NLIPair> rows;
    for (const semfrag::NLIPair& p : pairs) {
      if (p.split == split) rows.push_back(p);
    }
    fs::path path = out_dir / (semfrag::to_string(fragment) + "." +
                               semfrag::to_string(split) + ext);
    semfrag::write_pairs_file(path.string(), rows, format);
    log_line("wrote " + path.string() + " (" + std::to_string(rows.size()) +
             " rows)");
  }
}

int run_generate(const GenerateOpts& opts) {
  semfrag::ConfigMap map = load_config(opts.config_path, opts.overrides);

  std::vector<semfrag::FragmentId> fragments;
  if (opts.fragments.empty()) {
    fragments = semfrag::all_fragments();
  } else {
    for (const std::string& f : opts.fragments) {
      fragments.push_back(semfrag::fragment_from_string(f));
    }
  }
  semfrag::FileFormat format = semfrag::format_from_string(opts.format);
  std::string out_dir = resolve_out_dir(opts.out_dir, opts.out_given);
  int workers = resolve_workers(opts.workers, opts.workers_given);
  if (workers < 1) throw semfrag::ConfigError("--workers must be >= 1");

  std::uint64_t seed = map.get_u64("seed", 2026);
  if (opts.seed_given) seed = opts.seed;

  // Resolve every fragment's configuration up front so config mistakes
  // (including unconsumed keys) surface before any generation work runs.
  std::map<semfrag::FragmentId, semfrag::GeneratorConfig> logic_plans;
  std::map<semfrag::FragmentId, MonoPlan> mono_plans;
  bool wants_logic = false;
  for (semfrag::FragmentId fragment : fragments) {
    if (!semfrag::is_monotonicity(fragment)) {
      wants_logic = true;
      semfrag::GeneratorConfig cfg;
      cfg.fragment = fragment;
      logic_plans[fragment] = semfrag::apply_generator_config(map, cfg);
      continue;
    }
    MonoPlan plan;
    semfrag::MonoVariant variant =
        fragment == semfrag::FragmentId::kMonotonicitySimple
            ? semfrag::MonoVariant::kSimple
            : semfrag::MonoVariant::kHard;
    plan.config =
        semfrag::apply_mono_config(map, semfrag::MonoConfig::for_variant(variant));
    plan.config.seed = seed;
    plan.search = semfrag::apply_search_config(map, semfrag::SearchConfig{});
    if (opts.depth_given) plan.search.depth = opts.depth;
    plan.build =
        semfrag::apply_mono_build_config(map, semfrag::MonoBuildConfig{});
    // The documented seed premises ship with the hard variant and are used
    // by default when present; seed_premises_file=none opts out.
    fs::path default_seeds = fs::path(opts.data_dir) / "mono_seed_premises.txt";
    std::string fallback = variant == semfrag::MonoVariant::kHard &&
                                   fs::exists(default_seeds)
                               ? default_seeds.string()
                               : "";
    plan.seed_file = map.get_string("seed_premises_file", fallback);
    if (plan.seed_file == "none") plan.seed_file.clear();
    if (!plan.seed_file.empty()) {
      plan.build.seed_premises = read_premise_lines(plan.seed_file);
    }
    mono_plans[fragment] = plan;
  }
  reject_unconsumed(map);

  log_line("generate: seed=" + std::to_string(seed) + " out=" + out_dir +
           " format=" + opts.format + " workers=" + std::to_string(workers) +
           " data_dir=" + opts.data_dir);
  fs::create_directories(out_dir);

  semfrag::NameInventory inventory;
  if (wants_logic) {
    fs::path names = fs::path(opts.data_dir) / "logic_names.txt";
    inventory = semfrag::load_inventory(names.string());
  }

  semfrag::RandomSource root_rng(seed);
  for (semfrag::FragmentId fragment : fragments) {
    std::string name = semfrag::to_string(fragment);
    semfrag::RandomSource rng = root_rng.split(name);
    std::vector<semfrag::NLIPair> pairs;
    if (!semfrag::is_monotonicity(fragment)) {
      const semfrag::GeneratorConfig& cfg = logic_plans.at(fragment);
      log_line(name + ": " + describe(cfg));
      pairs = semfrag::build_logic_fragment(cfg, inventory, rng);
      write_splits(pairs, out_dir, fragment, format);
      if (opts.paraphrase_dev_flag) {
        log_line(name + ": --paraphrase-dev applies to monotonicity "
                        "fragments only; skipped");
      }
    } else {
      const MonoPlan& plan = mono_plans.at(fragment);
      log_line(name + ": " + describe(plan.config));
      log_line(name + ": " + describe(plan.search));
      log_line(name + ": " + describe(plan.build) +
               (plan.seed_file.empty() ? "" : " seed_file=" + plan.seed_file));
      semfrag::Lexicon lexicon = semfrag::Lexicon::load(
          (fs::path(opts.data_dir) / "mono_lexicon.tsv").string(),
          plan.config.numeric_min, plan.config.numeric_max);
      semfrag::KnowledgeBase kb = semfrag::KnowledgeBase::load(
          (fs::path(opts.data_dir) / "mono_kb.txt").string());
      kb.add_adjective_rules(lexicon);
      kb.close();
      pairs = semfrag::generate_pairs(plan.config, plan.search, plan.build,
                                      lexicon, kb, rng, workers);
      write_splits(pairs, out_dir, fragment, format);
      if (opts.paraphrase_dev_flag) {
        semfrag::ParaphraseTable table = semfrag::ParaphraseTable::load(
            (fs::path(opts.data_dir) / "mono_paraphrase.tsv").string());
        semfrag::validate_paraphrase_table(table, lexicon);
        std::vector<semfrag::NLIPair> dev_rows;
        for (const semfrag::NLIPair& p : pairs) {
          if (p.split == semfrag::Split::kDev) dev_rows.push_back(p);
        }
        std::vector<semfrag::NLIPair> rewritten =
            semfrag::paraphrase_dev(dev_rows, table, lexicon);
        std::string ext =
            format == semfrag::FileFormat::kJsonl ? ".jsonl" : ".tsv";
        fs::path path = fs::path(out_dir) / (name + ".dev_paraphrased" + ext);
        semfrag::write_pairs_file(path.string(), rewritten, format);
        log_line("wrote " + path.string() + " (" +
                 std::to_string(rewritten.size()) + " rows)");
      }
    }
    std::cout << semfrag::format_stats(semfrag::compute_stats(pairs));
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOpts {
  std::vector<std::string> files;
  std::string data_dir = "data";
  std::size_t limit = 0;
  bool as_json = false;
};

struct RowIssue {
  std::size_t row = 0;
  std::string premise;
  std::string hypothesis;
  std::string label;
  std::string oracle;  // empty for premise-unsat
  std::string kind;    // "mismatch" or "premise-unsat"
  std::string trace;   // monotonicity rows only
};

struct FileVerdict {
  std::string path;
  std::size_t rows = 0;
  std::size_t checked = 0;
  std::size_t agree = 0;
  std::size_t skipped = 0;
  std::map<std::string, std::size_t> skip_reasons;
  std::vector<RowIssue> issues;
};

const std::string& require_meta(const semfrag::NLIPair& row, std::size_t index,
                                const std::string& key) {
  auto it = row.meta.find(key);
  if (it == row.meta.end()) {
    throw semfrag::DataError("row " + std::to_string(index + 1) +
                             " is missing meta." + key +
                             "; verify needs JSONL rows with formula metadata");
  }
  return it->second;
}

FileVerdict verify_file(const std::string& path, const VerifyOpts& opts,
                        std::optional<semfrag::Lexicon>& lexicon,
                        std::optional<semfrag::KnowledgeBase>& kb) {
  FileVerdict verdict;
  verdict.path = path;
  std::vector<semfrag::NLIPair> rows = semfrag::read_pairs_file(path);
  verdict.rows = rows.size();
  std::size_t n = rows.size();
  if (opts.limit > 0 && opts.limit < n) n = opts.limit;

  for (std::size_t i = 0; i < n; ++i) {
    const semfrag::NLIPair& row = rows[i];
    if (semfrag::is_monotonicity(row.fragment)) {
      if (!lexicon) {
        lexicon = semfrag::Lexicon::load(
            (fs::path(opts.data_dir) / "mono_lexicon.tsv").string(), 1,
            kStandaloneNumericMax);
        kb = semfrag::KnowledgeBase::load(
            (fs::path(opts.data_dir) / "mono_kb.txt").string());
        kb->add_adjective_rules(*lexicon);
        kb->close();
      }
      semfrag::ParseTree premise;
      semfrag::ParseTree hypothesis;
      try {
        premise = semfrag::parse_sentence(*lexicon, row.premise);
        hypothesis = semfrag::parse_sentence(*lexicon, row.hypothesis);
      } catch (const semfrag::SentenceError&) {
        ++verdict.skipped;
        ++verdict.skip_reasons["unparseable"];
        continue;
      }
      std::optional<semfrag::Label> oracle =
          semfrag::mono_fol_label(premise, hypothesis, *lexicon, *kb);
      if (!oracle) {
        ++verdict.skipped;
        ++verdict.skip_reasons["outside first-order subset"];
        continue;
      }
      ++verdict.checked;
      if (*oracle == row.label) {
        ++verdict.agree;
      } else {
        RowIssue issue;
        issue.row = i + 1;
        issue.premise = row.premise;
        issue.hypothesis = row.hypothesis;
        issue.label = semfrag::to_string(row.label);
        issue.oracle = semfrag::to_string(*oracle);
        issue.kind = "mismatch";
        auto trace = row.meta.find("trace");
        if (trace != row.meta.end()) issue.trace = trace->second;
        verdict.issues.push_back(std::move(issue));
      }
      continue;
    }

    semfrag::Formula premise =
        semfrag::parse_sexpr(require_meta(row, i, "premise_form"));
    semfrag::Formula hypothesis =
        semfrag::parse_sexpr(require_meta(row, i, "hypothesis_form"));
    semfrag::OracleOptions oracle_opts;
    oracle_opts.bounds = semfrag::verify_bounds(row.fragment);
    oracle_opts.constant_sorts =
        semfrag::decode_constant_sorts(require_meta(row, i, "constants"));
    ++verdict.checked;
    try {
      semfrag::OracleResult res =
          semfrag::oracle_label_ex(premise, hypothesis, oracle_opts);
      if (res.label == row.label) {
        ++verdict.agree;
      } else {
        RowIssue issue;
        issue.row = i + 1;
        issue.premise = row.premise;
        issue.hypothesis = row.hypothesis;
        issue.label = semfrag::to_string(row.label);
        issue.oracle = semfrag::to_string(res.label);
        issue.kind = "mismatch";
        verdict.issues.push_back(std::move(issue));
      }
    } catch (const semfrag::OracleError& e) {
      RowIssue issue;
      issue.row = i + 1;
      issue.premise = row.premise;
      issue.hypothesis = row.hypothesis;
      issue.label = semfrag::to_string(row.label);
      issue.kind = std::string("premise-unsat: ") + e.what();
      verdict.issues.push_back(std::move(issue));
    }
  }
  if (opts.limit > 0 && verdict.rows > n) {
    verdict.skip_reasons["beyond --limit"] += verdict.rows - n;
    verdict.skipped += verdict.rows - n;
  }
  return verdict;
}

int run_verify(const VerifyOpts& opts) {
  log_line("verify: files=" + std::to_string(opts.files.size()) +
           " data_dir=" + opts.data_dir +
           " limit=" + std::to_string(opts.limit));
  std::optional<semfrag::Lexicon> lexicon;
  std::optional<semfrag::KnowledgeBase> kb;
  std::vector<FileVerdict> verdicts;
  std::size_t disagreements = 0;
  for (const std::string& path : opts.files) {
    FileVerdict v = verify_file(path, opts, lexicon, kb);
    disagreements += v.issues.size();
    verdicts.push_back(std::move(v));
  }

  if (opts.as_json) {
    json out;
    out["ok"] = disagreements == 0;
    out["files"] = json::array();
    for (const FileVerdict& v : verdicts) {
      json f;
      f["path"] = v.path;
      f["rows"] = v.rows;
      f["checked"] = v.checked;
      f["agree"] = v.agree;
      f["disagree"] = v.issues.size();
      f["skipped"] = v.skipped;
      f["skip_reasons"] = json::object();
      for (const auto& [reason, count] : v.skip_reasons) {
        f["skip_reasons"][reason] = count;
      }
      f["issues"] = json::array();
      for (const RowIssue& issue : v.issues) {
        json j;
        j["row"] = issue.row;
        j["premise"] = issue.premise;
        j["hypothesis"] = issue.hypothesis;
        j["label"] = issue.label;
        j["oracle"] = issue.oracle;
        j["kind"] = issue.kind;
        if (!issue.trace.empty()) j["trace"] = issue.trace;
        f["issues"].push_back(std::move(j));
      }
      out["files"].push_back(std::move(f));
    }
    std::cout << out.dump(2) << "\n";
  } else {
    for (const FileVerdict& v : verdicts) {
      std::cout << v.path << ": rows=" << v.rows << " checked=" << v.checked
                << " agree=" << v.agree << " disagree=" << v.issues.size()
                << " skipped=" << v.skipped << "\n";
      for (const auto& [reason, count] : v.skip_reasons) {
        std::cout << "  skipped " << count << ": " << reason << "\n";
      }
      for (const RowIssue& issue : v.issues) {
        std::cout << "  [" << issue.kind << "] row " << issue.row
                  << " label=" << issue.label;
        if (!issue.oracle.empty()) std::cout << " oracle=" << issue.oracle;
        std::cout << "\n    P: " << issue.premise
                  << "\n    H: " << issue.hypothesis << "\n";
        if (!issue.trace.empty()) {
          std::cout << "    trace: " << issue.trace << "\n";
        }
      }
    }
  }
  return disagreements == 0 ? 0 : 2;
}

// ---------------------------------------------------------------------------
// polarize

struct PolarizeOpts {
  std::string file;  // empty = stdin
  std::string data_dir = "data";
  bool ascii = false;
};

int run_polarize(const PolarizeOpts& opts) {
  log_line("polarize: input=" + (opts.file.empty() ? "<stdin>" : opts.file) +
           " data_dir=" + opts.data_dir +
           std::string(opts.ascii ? " ascii" : ""));
  semfrag::Lexicon lexicon = semfrag::Lexicon::load(
      (fs::path(opts.data_dir) / "mono_lexicon.tsv").string(), 1,
      kStandaloneNumericMax);

  std::ifstream file_in;
  if (!opts.file.empty()) {
    file_in.open(opts.file);
    if (!file_in) {
      throw semfrag::DataError("cannot open input: " + opts.file);
    }
  }
  std::istream& in = opts.file.empty() ? std::cin : file_in;

  int failures = 0;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (semfrag::canonicalize(line).empty()) continue;
    try {
      semfrag::ParseTree tree = semfrag::parse_sentence(lexicon, line);
      semfrag::polarize(tree);
      std::cout << semfrag::render_polarized(tree, opts.ascii) << "\n";
    } catch (const semfrag::Error& e) {
      std::cerr << "line " << line_no << ": " << e.what() << "\n";
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// stats

struct StatsOpts {
  std::vector<std::string> files;
  bool as_json = false;
};

json stats_to_json(const semfrag::DatasetStats& stats) {
  json j;
  j["fragment"] = semfrag::to_string(stats.fragment);
  j["n_pairs"] = stats.n_pairs;
  j["vocab_size"] = stats.vocab_size;
  j["avg_sentence_len"] = stats.avg_sentence_len;
  j["label_histogram"] = json::object();
  for (const auto& [label, count] : stats.label_histogram) {
    j["label_histogram"][semfrag::to_string(label)] = count;
  }
  j["split_histogram"] = json::object();
  for (const auto& [split, count] : stats.split_histogram) {
    j["split_histogram"][semfrag::to_string(split)] = count;
  }
  return j;
}

int run_stats(const StatsOpts& opts) {
  log_line("stats: files=" + std::to_string(opts.files.size()));
  json out = json::array();
  for (const std::string& path : opts.files) {
    semfrag::DatasetStats stats =
        semfrag::compute_stats(semfrag::read_pairs_file(path));
    if (opts.as_json) {
      json j = stats_to_json(stats);
      j["path"] = path;
      out.push_back(std::move(j));
    } else {
      std::cout << "== " << path << "\n" << semfrag::format_stats(stats);
    }
  }
  if (opts.as_json) std::cout << out.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// audit

struct AuditOpts {
  std::string dir;
  int top_k = 10;
  int min_count = 5;
  bool as_json = false;
};

struct FragmentFiles {
  // split name -> path; populated from <stem>.<split>.<jsonl|tsv> entries.
  std::map<std::string, fs::path> splits;
};

json probe_to_json(const semfrag::ProbeReport& probe) {
  json j;
  j["accuracy"] = probe.accuracy;
  j["train_rows"] = probe.train_rows;
  j["test_rows"] = probe.test_rows;
  j["feature_count"] = probe.feature_count;
  return j;
}

int run_audit(const AuditOpts& opts) {
  log_line("audit: dir=" + opts.dir + " top_k=" + std::to_string(opts.top_k) +
           " min_count=" + std::to_string(opts.min_count));
  if (!fs::is_directory(opts.dir)) {
    throw semfrag::DataError("audit expects a dataset directory, got: " +
                             opts.dir);
  }
  std::map<std::string, FragmentFiles> groups;
  for (const auto& entry : fs::directory_iterator(opts.dir)) {
    if (!entry.is_regular_file()) continue;
    std::string name = entry.path().filename().string();
    std::string ext = entry.path().extension().string();
    if (ext != ".jsonl" && ext != ".tsv") continue;
    std::string base = name.substr(0, name.size() - ext.size());
    auto dot = base.rfind('.');
    if (dot == std::string::npos) continue;
    std::string split = base.substr(dot + 1);
    if (split != "train" && split != "dev" && split != "test") continue;
    std::string stem = base.substr(0, dot);
    auto [it, inserted] = groups[stem].splits.try_emplace(split, entry.path());
    if (!inserted && ext == ".jsonl") it->second = entry.path();
  }
  if (groups.empty()) {
    throw semfrag::DataError("no <fragment>.<train|dev|test>.<jsonl|tsv> "
                             "files found in " + opts.dir);
  }

  json out = json::object();
  for (const auto& [stem, files] : groups) {
    std::vector<semfrag::NLIPair> rows;
    for (const auto& [split, path] : files.splits) {
      std::vector<semfrag::NLIPair> part =
          semfrag::read_pairs_file(path.string());
      semfrag::Split s = semfrag::split_from_string(split);
      for (semfrag::NLIPair& row : part) {
        row.split = s;  // TSV rows carry no split; the filename is authoritative
        rows.push_back(std::move(row));
      }
    }
    semfrag::AuditReport report =
        semfrag::audit_dataset(rows, opts.top_k, opts.min_count);
    if (opts.as_json) {
      json j;
      j["majority_label"] = semfrag::to_string(report.majority_label);
      j["majority_accuracy"] = report.majority_accuracy;
      j["hypothesis_only"] = probe_to_json(report.hypothesis_only);
      j["premise_only"] = probe_to_json(report.premise_only);
      j["top_associations"] = json::array();
      for (const semfrag::PmiEntry& entry : report.top_associations) {
        json e;
        e["token"] = entry.token;
        e["label"] = semfrag::to_string(entry.label);
        e["pmi"] = entry.pmi;
        e["count"] = entry.count;
        j["top_associations"].push_back(std::move(e));
      }
      out[stem] = std::move(j);
    } else {
      std::cout << "== " << stem << "\n" << semfrag::format_audit(report);
    }
  }
  if (opts.as_json) std::cout << out.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// select

struct SelectOpts {
  std::string csv;
  std::vector<std::string> archs;
  std::vector<int> ks;
  std::string out;  // file for one arch, directory for several
};

int run_select(const SelectOpts& opts) {
  std::vector<semfrag::ScoreRecord> records = semfrag::load_scores(opts.csv);
  std::vector<std::string> archs = opts.archs;
  if (archs.empty()) {
    std::set<std::string> seen;
    for (const semfrag::ScoreRecord& r : records) seen.insert(r.arch);
    archs.assign(seen.begin(), seen.end());
  }
  log_line("select: csv=" + opts.csv + " records=" +
           std::to_string(records.size()) + " archs=" +
           std::to_string(archs.size()) +
           (opts.ks.empty() ? "" : " k_filter=" + std::to_string(opts.ks.size())));

  std::vector<semfrag::SelectionResult> results;
  for (const std::string& arch : archs) {
    semfrag::SelectionResult result = semfrag::curve(records, arch);
    if (!opts.ks.empty()) {
      std::vector<semfrag::CurvePoint> kept;
      for (const semfrag::CurvePoint& point : result.points) {
        for (int k : opts.ks) {
          if (point.k == k) {
            kept.push_back(point);
            break;
          }
        }
      }
      if (kept.empty()) {
        throw semfrag::DataError("no records for arch '" + arch +
                                 "' at the requested k values");
      }
      result.points = std::move(kept);
    }
    for (const semfrag::CurvePoint& point : result.points) {
      std::ostringstream os;
      os << "chosen arch=" << result.arch << " k=" << point.k
         << " j=" << point.chosen.j << " hyperparams=" << point.chosen.hyperparams
         << " aggregate=" << point.aggregate;
      log_line(os.str());
    }
    results.push_back(std::move(result));
  }

  if (opts.out.empty()) {
    for (const semfrag::SelectionResult& result : results) {
      if (results.size() > 1) std::cout << "# arch " << result.arch << "\n";
      std::cout << semfrag::write_curve_csv(result);
    }
  } else if (results.size() == 1) {
    std::ofstream out(opts.out);
    if (!out) throw semfrag::DataError("cannot write " + opts.out);
    out << semfrag::write_curve_csv(results.front());
    log_line("wrote " + opts.out);
  } else {
    fs::create_directories(opts.out);
    for (const semfrag::SelectionResult& result : results) {
      fs::path path = fs::path(opts.out) / (result.arch + ".curve.csv");
      std::ofstream out(path);
      if (!out) throw semfrag::DataError("cannot write " + path.string());
      out << semfrag::write_curve_csv(result);
      log_line("wrote " + path.string());
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semantic-fragment NLI dataset engine"};
  app.require_subcommand(1);

  GenerateOpts gen;
  CLI::App* generate = app.add_subcommand(
      "generate", "Generate fragment datasets (train/dev/test files)");
  generate->add_option("--fragment", gen.fragments,
                       "fragment name (repeatable; default: all fragments)");
  generate->add_option("--config", gen.config_path,
                       "key=value config file mirroring the generator configs");
  generate->add_option("--set", gen.overrides,
                       "config override key=value (repeatable)");
  CLI::Option* out_opt =
      generate->add_option("--out", gen.out_dir,
                           "output directory (env SEMFRAG_OUT_DIR; default out)");
  generate->add_option("--data-dir", gen.data_dir,
                       "directory with lexicon/KB/name files (default data)");
  generate->add_option("--format", gen.format, "output format")
      ->check(CLI::IsMember({"jsonl", "tsv"}));
  CLI::Option* seed_opt =
      generate->add_option("--seed", gen.seed, "RNG seed (default 2026)");
  CLI::Option* depth_opt = generate->add_option(
      "--depth", gen.depth, "substitution search depth (default 2)");
  CLI::Option* workers_opt = generate->add_option(
      "--workers", gen.workers,
      "generation threads (env SEMFRAG_WORKERS; default 1); output is "
      "identical for any value");
  generate->add_flag("--paraphrase-dev", gen.paraphrase_dev_flag,
                     "also write <fragment>.dev_paraphrased with nouns/verbs "
                     "mapped through the shipped paraphrase table");

  VerifyOpts ver;
  CLI::App* verify = app.add_subcommand(
      "verify", "Re-derive labels with the bounded-model oracle");
  verify->add_option("files", ver.files, "JSONL dataset files")
      ->required()
      ->check(CLI::ExistingFile);
  verify->add_option("--data-dir", ver.data_dir,
                     "directory with lexicon/KB files (default data)");
  verify->add_option("--limit", ver.limit,
                     "verify only the first N rows per file (0 = all)");
  verify->add_flag("--json", ver.as_json, "machine-readable report");

  PolarizeOpts pol;
  CLI::App* polarize = app.add_subcommand(
      "polarize", "Arrow-annotate sentences (one per line, stdin or file)");
  polarize->add_option("file", pol.file, "input file (default stdin)")
      ->check(CLI::ExistingFile);
  polarize->add_option("--data-dir", pol.data_dir,
                       "directory with the lexicon (default data)");
  polarize->add_flag("--ascii", pol.ascii,
                     "render marks as ^ / v / = instead of arrows");

  StatsOpts sta;
  CLI::App* stats =
      app.add_subcommand("stats", "Dataset statistics for fragment files");
  stats->add_option("files", sta.files, "dataset files (.jsonl or .tsv)")
      ->required()
      ->check(CLI::ExistingFile);
  stats->add_flag("--json", sta.as_json, "machine-readable report");

  AuditOpts aud;
  CLI::App* audit = app.add_subcommand(
      "audit", "Artifact probes over a directory of dataset files");
  audit->add_option("dir", aud.dir, "directory with <fragment>.<split> files")
      ->required();
  audit->add_option("--top-k", aud.top_k, "PMI entries to report (default 10)");
  audit->add_option("--min-count", aud.min_count,
                    "minimum token count for the PMI ranking (default 5)");
  audit->add_flag("--json", aud.as_json, "machine-readable report");

  SelectOpts sel;
  CLI::App* select = app.add_subcommand(
      "select", "Lossless-inoculation selection over a score table");
  select->add_option("csv", sel.csv, "score CSV (arch,k,j,hyperparams,s_frag,s_orig)")
      ->required()
      ->check(CLI::ExistingFile);
  select->add_option("--arch", sel.archs,
                     "architecture filter (repeatable; default: all)");
  select->add_option("--k", sel.ks,
                     "fine-tuning-size filter (repeatable; default: all)");
  select->add_option("--out", sel.out,
                     "output file (one arch) or directory (several)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      gen.out_given = out_opt->count() > 0;
      gen.seed_given = seed_opt->count() > 0;
      gen.depth_given = depth_opt->count() > 0;
      gen.workers_given = workers_opt->count() > 0;
      return run_generate(gen);
    }
    if (verify->parsed()) return run_verify(ver);
    if (polarize->parsed()) return run_polarize(pol);
    if (stats->parsed()) return run_stats(sta);
    if (audit->parsed()) return run_audit(aud);
    if (select->parsed()) return run_select(sel);
  } catch (const semfrag::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
