// Command-line front end. Talks to the library exclusively through the C
// surface in capstab.h; all parsing of flags and rendering of results
// happens here.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "capstab.h"
#include "json.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitStable = 0;
constexpr int kExitUnstable = 1;
constexpr int kExitError = 2;

// RAII wrappers for the C handles.
struct GraphDeleter {
  void operator()(capstab_graph* g) const { capstab_graph_free(g); }
};
using GraphPtr = std::unique_ptr<capstab_graph, GraphDeleter>;

struct ResultDeleter {
  void operator()(capstab_result* r) const { capstab_result_free(r); }
};
using ResultPtr = std::unique_ptr<capstab_result, ResultDeleter>;

std::string take_string(char* s) {
  std::string out = s != nullptr ? s : "";
  capstab_string_free(s);
  return out;
}

[[noreturn]] void die(capstab_status status, const std::string& msg) {
  std::cerr << "error (" << capstab_status_name(status) << "): " << msg
            << "\n";
  std::exit(kExitError);
}

// Reads a whole file, or stdin for "-".
std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) die(CAPSTAB_ERR_INVALID, "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes text to a file, or stdout for "-".
void spill(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) die(CAPSTAB_ERR_INVALID, "cannot write file: " + path);
  out << text;
}

GraphPtr load_instance(const std::string& path) {
  std::string text = slurp(path);
  capstab_graph* g = nullptr;
  char* err = nullptr;
  capstab_status st = capstab_parse(text.c_str(), &g, &err);
  if (st != CAPSTAB_OK) die(st, path + ": " + take_string(err));
  return GraphPtr(g);
}

// Renders one result. Text mode prints "key: value" lines, skipping the
// multi-line payload keys (those are routed to files by flags); structured
// mode prints a single-line JSON object with every key. With several input
// files each block is tagged with its instance path.
void render(const capstab_result* r, const std::string& format,
            const std::string& instance, bool tag_instance) {
  if (format == "structured") {
    ordered_json obj;
    if (tag_instance) obj["instance"] = instance;
    size_t n = capstab_result_count(r);
    for (size_t i = 0; i < n; ++i) {
      obj[capstab_result_key(r, i)] = capstab_result_value(r, i);
    }
    std::cout << obj.dump() << "\n";
    return;
  }
  if (tag_instance) std::cout << "instance: " << instance << "\n";
  size_t n = capstab_result_count(r);
  for (size_t i = 0; i < n; ++i) {
    std::string key = capstab_result_key(r, i);
    if (key == "certificate" || key == "stabilized") continue;
    std::cout << key << ": " << capstab_result_value(r, i) << "\n";
  }
  if (tag_instance) std::cout << "\n";
}

struct CommonOpts {
  std::vector<std::string> files{"-"};
  std::string format = "text";
};

void add_common(CLI::App* cmd, CommonOpts* opts) {
  cmd->add_option("files", opts->files, "instance files ('-' for stdin)");
  cmd->add_option("--format", opts->format, "output format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capacitated matching stability toolkit"};
  app.set_version_flag("--version", capstab_version());
  app.require_subcommand(1);

  CommonOpts check_opts;
  std::string check_cert_path;
  CLI::App* check = app.add_subcommand(
      "check", "decide stability (exit 0 stable, 1 unstable, 2 error)");
  add_common(check, &check_opts);
  check->add_option("--certificate", check_cert_path,
                    "write the certificate document to this file");

  CommonOpts gamma_opts;
  bool gamma_exact = false;
  CLI::App* gamma = app.add_subcommand(
      "gamma", "minimum fractional odd-cycle count of an optimum");
  add_common(gamma, &gamma_opts);
  gamma->add_flag("--exact", gamma_exact,
                  "confirm the count against exhaustive enumeration");

  CommonOpts stab_opts;
  std::string stab_mode;
  std::string stab_cert_path;
  std::string stab_out_path;
  bool stab_heuristic = false;
  CLI::App* stab =
      app.add_subcommand("stabilize", "compute a stabilizer and certificate");
  add_common(stab, &stab_opts);
  stab->add_option("--mode", stab_mode, "stabilizer kind")
      ->check(CLI::IsMember({"capacity", "edge"}))
      ->required();
  stab->add_option("--certificate", stab_cert_path,
                   "write the certificate document to this file");
  stab->add_option("--stabilized", stab_out_path,
                   "write the stabilized instance to this file");
  stab->add_flag("--heuristic", stab_heuristic,
                 "skip enumeration; solution size may exceed the minimum");

  CommonOpts oracle_opts;
  std::string oracle_which;
  CLI::App* oracle =
      app.add_subcommand("oracle", "run an exhaustive ground-truth routine");
  oracle
      ->add_option("which", oracle_which,
                   "matching, fractional, stable, basic, capacity, edge, "
                   "edge-wp or polytope")
      ->required();
  add_common(oracle, &oracle_opts);

  std::string gen_family;
  std::vector<std::string> gen_params;
  std::uint64_t gen_seed = 0;
  std::string gen_format = "text";
  CLI::App* gen = app.add_subcommand("gen", "generate a named instance");
  gen->add_option("--family", gen_family, "family name")->required();
  gen->add_option("--param", gen_params, "family parameter key=value");
  gen->add_option("--seed", gen_seed, "seed for the random family")
      ->capture_default_str();
  gen->add_option("--format", gen_format, "output format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();

  std::string verify_cert_path;
  std::string verify_instance = "-";
  std::string verify_format = "text";
  CLI::App* verify = app.add_subcommand(
      "verify",
      "re-verify a certificate against an instance (exit 0 verified, "
      "1 failed, 2 error)");
  verify->add_option("certificate", verify_cert_path, "certificate file")
      ->required();
  verify->add_option("instance", verify_instance,
                     "instance file ('-' for stdin)");
  verify->add_option("--format", verify_format, "output format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (*check) {
    bool tag = check_opts.files.size() > 1;
    bool any_unstable = false;
    for (const std::string& path : check_opts.files) {
      GraphPtr g = load_instance(path);
      capstab_result* raw = nullptr;
      char* err = nullptr;
      capstab_status st = capstab_check(g.get(), &raw, &err);
      if (st != CAPSTAB_OK) die(st, path + ": " + take_string(err));
      ResultPtr r(raw);
      render(r.get(), check_opts.format, path, tag);
      if (!check_cert_path.empty()) {
        spill(check_cert_path, capstab_result_get(r.get(), "certificate"));
      }
      if (std::string(capstab_result_get(r.get(), "verdict")) == "unstable") {
        any_unstable = true;
      }
    }
    return any_unstable ? kExitUnstable : kExitStable;
  }

  if (*gamma) {
    bool tag = gamma_opts.files.size() > 1;
    for (const std::string& path : gamma_opts.files) {
      GraphPtr g = load_instance(path);
      capstab_result* raw = nullptr;
      char* err = nullptr;
      capstab_status st =
          capstab_gamma(g.get(), gamma_exact ? 1 : 0, &raw, &err);
      if (st != CAPSTAB_OK) die(st, path + ": " + take_string(err));
      ResultPtr r(raw);
      render(r.get(), gamma_opts.format, path, tag);
    }
    return 0;
  }

  if (*stab) {
    bool tag = stab_opts.files.size() > 1;
    for (const std::string& path : stab_opts.files) {
      GraphPtr g = load_instance(path);
      capstab_result* raw = nullptr;
      char* err = nullptr;
      capstab_status st = capstab_stabilize(
          g.get(), stab_mode.c_str(), stab_heuristic ? 0 : 1, &raw, &err);
      if (st != CAPSTAB_OK) die(st, path + ": " + take_string(err));
      ResultPtr r(raw);
      render(r.get(), stab_opts.format, path, tag);
      if (!stab_cert_path.empty()) {
        spill(stab_cert_path, capstab_result_get(r.get(), "certificate"));
      }
      if (!stab_out_path.empty()) {
        spill(stab_out_path, capstab_result_get(r.get(), "stabilized"));
      }
    }
    return 0;
  }

  if (*oracle) {
    bool tag = oracle_opts.files.size() > 1;
    for (const std::string& path : oracle_opts.files) {
      GraphPtr g = load_instance(path);
      capstab_result* raw = nullptr;
      char* err = nullptr;
      capstab_status st =
          capstab_oracle(g.get(), oracle_which.c_str(), &raw, &err);
      if (st != CAPSTAB_OK) die(st, path + ": " + take_string(err));
      ResultPtr r(raw);
      render(r.get(), oracle_opts.format, path, tag);
    }
    return 0;
  }

  if (*gen) {
    std::string params;
    for (const std::string& p : gen_params) {
      if (!params.empty()) params += ',';
      params += p;
    }
    capstab_graph* raw = nullptr;
    char* err = nullptr;
    capstab_status st =
        capstab_generate(gen_family.c_str(), params.c_str(), gen_seed, &raw,
                         &err);
    if (st != CAPSTAB_OK) die(st, take_string(err));
    GraphPtr g(raw);
    char* text = nullptr;
    st = capstab_serialize(g.get(), &text);
    if (st != CAPSTAB_OK) die(st, "serialization failed");
    std::string instance = take_string(text);
    if (gen_format == "structured") {
      ordered_json obj;
      obj["family"] = gen_family;
      obj["seed"] = gen_seed;
      obj["instance"] = instance;
      std::cout << obj.dump() << "\n";
    } else {
      std::cout << instance;
    }
    return 0;
  }

  if (*verify) {
    std::string cert = slurp(verify_cert_path);
    GraphPtr g = load_instance(verify_instance);
    char* why = nullptr;
    capstab_status st = capstab_verify(cert.c_str(), g.get(), &why);
    if (st == CAPSTAB_OK) {
      if (verify_format == "structured") {
        ordered_json obj;
        obj["verified"] = true;
        std::cout << obj.dump() << "\n";
      } else {
        std::cout << "verified\n";
      }
      return 0;
    }
    std::string reason = take_string(why);
    if (st == CAPSTAB_ERR_VERIFY) {
      if (verify_format == "structured") {
        ordered_json obj;
        obj["verified"] = false;
        obj["reason"] = reason;
        std::cout << obj.dump() << "\n";
      } else {
        std::cout << "verification failed: " << reason << "\n";
      }
      return kExitUnstable;
    }
    die(st, reason);
  }

  return 0;
}
