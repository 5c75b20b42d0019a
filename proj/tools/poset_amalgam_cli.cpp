// Command-line front end: jep, lemma1, wap-demo, amalgam, certify, gen.
// Exit codes: 0 success / amalgam found / certificate valid,
//             1 refuted / no amalgam / certificate invalid,
//             2 resource or bound exhaustion,
//             3 input error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pamalg/amalgam.hpp"
#include "pamalg/generators.hpp"
#include "pamalg/json_io.hpp"
#include "pamalg/rng.hpp"
#include "pamalg/witness.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitExhausted = 2;
constexpr int kExitInputError = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pamalg::Error(pamalg::ErrorKind::InputError, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw pamalg::Error(pamalg::ErrorKind::InputError, "cannot write " + path.string());
  out << content;
}

pamalg::ElementId resolve_element(const pamalg::Poset& poset, const std::string& text) {
  if (auto id = poset.find_label(text)) return *id;
  try {
    pamalg::ElementId id = static_cast<pamalg::ElementId>(std::stol(text));
    if (poset.contains(id)) return id;
  } catch (const std::exception&) {
  }
  throw pamalg::Error(pamalg::ErrorKind::InputError, "no element named '" + text + "'");
}

pamalg::AmalgamOptions amalgam_options() {
  pamalg::AmalgamOptions options;
  if (const char* env = std::getenv("POSET_AMALGAM_MAX_NODES")) {
    options.max_nodes = std::strtoull(env, nullptr, 10);
  }
  return options;
}

int run_jep(const std::string& left_path, const std::string& right_path,
            const std::string& out_path) {
  pamalg::PaPair left = pamalg::pa_pair_from_json(read_file(left_path));
  pamalg::PaPair right = pamalg::pa_pair_from_json(read_file(right_path));
  pamalg::JepResult joined = pamalg::jep_join(left, right);
  std::string text = pamalg::to_json(joined.joined);
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    write_file(out_path, text);
  }
  return kExitSuccess;
}

int run_lemma1(const std::string& input_path, const std::string& s_text, bool trace,
               const std::string& out_path) {
  pamalg::PaPair input = pamalg::pa_pair_from_json(read_file(input_path));
  pamalg::ElementId s = resolve_element(input.poset, s_text);
  pamalg::Lemma1Trace result = pamalg::lemma1_extend(input.f, s);
  std::ostringstream summary;
  summary << "free interval (" << result.result.poset().label(result.a) << ", "
          << result.result.poset().label(result.b) << ") at orbit length " << result.n << "\n";
  if (trace) {
    std::string text = pamalg::to_json(result);
    if (out_path.empty()) {
      std::cout << text << "\n";
    } else {
      write_file(out_path, text);
      std::cout << summary.str();
    }
  } else {
    std::cout << summary.str();
  }
  return kExitSuccess;
}

int run_wap_demo(const std::string& atilde_path, const std::string& out_dir) {
  pamalg::PaPair atilde =
      atilde_path.empty() ? pamalg::base_pair() : pamalg::pa_pair_from_json(read_file(atilde_path));

  pamalg::A0Result a0 = pamalg::build_A0(atilde);
  pamalg::PaPair a1 = pamalg::build_A1(a0);
  pamalg::PaPair a2 = pamalg::build_A2(a0);
  pamalg::ObstructionCertificate cert = pamalg::make_certificate(a0, a1, a2);

  std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
  std::filesystem::create_directories(dir);
  write_file(dir / "base.json", pamalg::to_json(cert.base));
  write_file(dir / "a0.json", pamalg::to_json(a0.a0));
  write_file(dir / "a1.json", pamalg::to_json(a1));
  write_file(dir / "a2.json", pamalg::to_json(a2));
  write_file(dir / "a0.dot", pamalg::to_dot(a0.a0, "a0"));
  write_file(dir / "a1.dot", pamalg::to_dot(a1, "a1"));
  write_file(dir / "a2.dot", pamalg::to_dot(a2, "a2"));
  write_file(dir / "meta.json", pamalg::to_json(a0.meta));
  write_file(dir / "certificate.json", pamalg::to_json(cert));
  write_file(dir / "proof.txt", pamalg::describe_certificate(cert));

  std::cout << pamalg::describe_certificate(cert);
  std::cout << "artifacts written to " << dir.string() << "\n";
  return kExitSuccess;
}

int run_amalgam(const std::string& base_path, const std::string& left_path,
                const std::string& right_path) {
  pamalg::PaPair base = pamalg::pa_pair_from_json(read_file(base_path));
  pamalg::PaPair left = pamalg::pa_pair_from_json(read_file(left_path));
  pamalg::PaPair right = pamalg::pa_pair_from_json(read_file(right_path));
  if (!pamalg::is_pa_extension(base, left) || !pamalg::is_pa_extension(base, right)) {
    throw pamalg::Error(pamalg::ErrorKind::InputError,
                        "left and right must extend the base (inclusion embeddings)");
  }
  pamalg::PaEmbedding into_left = pamalg::inclusion_pa_embedding(base, left);
  pamalg::PaEmbedding into_right = pamalg::inclusion_pa_embedding(base, right);
  pamalg::AmalgamResult result =
      pamalg::amalgam_exists(base, left, right, into_left, into_right, amalgam_options());

  switch (result.outcome) {
    case pamalg::AmalgamOutcome::Found:
      std::cout << "amalgam found after " << result.nodes << " nodes\n";
      std::cout << pamalg::to_json(result.amalgam->d) << "\n";
      return kExitSuccess;
    case pamalg::AmalgamOutcome::Refuted:
      std::cout << "no amalgam exists (exhaustive refutation, " << result.nodes << " nodes)\n";
      return kExitRefuted;
    case pamalg::AmalgamOutcome::ResourceLimit:
      std::cout << "undecided within budget (" << result.nodes << " nodes)\n";
      return kExitExhausted;
  }
  return kExitInputError;
}

int run_certify(const std::string& cert_path) {
  pamalg::ObstructionCertificate cert = pamalg::certificate_from_json(read_file(cert_path));
  pamalg::CertificateCheck check = pamalg::check_certificate(cert);
  if (check.valid) {
    std::cout << "certificate valid\n";
    return kExitSuccess;
  }
  std::cout << "certificate invalid: " << check.failure << "\n";
  return kExitRefuted;
}

int run_gen(const std::string& base_path, std::uint64_t seed, int count, int steps,
            int max_points, const std::string& out_path) {
  pamalg::PaPair base =
      base_path.empty() ? pamalg::base_pair() : pamalg::pa_pair_from_json(read_file(base_path));
  pamalg::RandomExtensionOptions options;
  options.max_new_points = max_points;

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw pamalg::Error(pamalg::ErrorKind::InputError, "cannot write " + out_path);
    out = &file;
  }
  for (int i = 0; i < count; ++i) {
    pamalg::Rng stream(seed);
    std::uint64_t item_seed = stream.split(static_cast<std::uint64_t>(i)).next();
    pamalg::PaPair extended = pamalg::random_pa_extension(base, steps, item_seed, options);
    *out << "{\"seed\":" << seed << ",\"index\":" << i
         << ",\"pair\":" << pamalg::to_json(extended, -1) << "}\n";
  }
  return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite posets, partial automorphisms, free intervals and amalgamation"};
  app.require_subcommand(1);

  std::string left_path, right_path, base_path, input_path, cert_path, atilde_path;
  std::string out_path, s_text;
  bool trace = false;
  std::uint64_t seed = 1;
  int count = 10;
  int steps = 6;
  int max_points = 3;

  CLI::App* jep = app.add_subcommand("jep", "join two pairs below/above each other");
  jep->add_option("--left", left_path, "left pair (JSON)")->required();
  jep->add_option("--right", right_path, "right pair (JSON)")->required();
  jep->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* lemma = app.add_subcommand("lemma1", "build a free interval at an orbit");
  lemma->add_option("--input", input_path, "pair (JSON); the f component is used")->required();
  lemma->add_option("--s", s_text, "start element (id or label)")->required();
  lemma->add_flag("--trace", trace, "emit the full trace as JSON");
  lemma->add_option("--out", out_path, "trace output file (default stdout)");

  CLI::App* demo = app.add_subcommand("wap-demo", "build the two-extension obstruction");
  demo->add_option("--atilde", atilde_path, "extension of the canonical pair (JSON)");
  demo->add_option("--out", out_path, "output directory");

  CLI::App* amalgam = app.add_subcommand("amalgam", "decide amalgamation over a base");
  amalgam->add_option("--base", base_path, "base pair (JSON)")->required();
  amalgam->add_option("--left", left_path, "first extension (JSON)")->required();
  amalgam->add_option("--right", right_path, "second extension (JSON)")->required();

  CLI::App* certify = app.add_subcommand("certify", "re-check an obstruction certificate");
  certify->add_option("--cert", cert_path, "certificate (JSON)")->required();

  CLI::App* gen = app.add_subcommand("gen", "emit a corpus of random extensions (JSON lines)");
  gen->add_option("--base", base_path, "base pair (JSON, default the canonical pair)");
  gen->add_option("--seed", seed, "corpus seed");
  gen->add_option("--count", count, "number of items");
  gen->add_option("--steps", steps, "random moves per item");
  gen->add_option("--max-points", max_points, "cap on new points per item");
  gen->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (jep->parsed()) return run_jep(left_path, right_path, out_path);
    if (lemma->parsed()) return run_lemma1(input_path, s_text, trace, out_path);
    if (demo->parsed()) return run_wap_demo(atilde_path, out_path);
    if (amalgam->parsed()) return run_amalgam(base_path, left_path, right_path);
    if (certify->parsed()) return run_certify(cert_path);
    if (gen->parsed()) return run_gen(base_path, seed, count, steps, max_points, out_path);
  } catch (const pamalg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case pamalg::ErrorKind::BoundExhausted:
      case pamalg::ErrorKind::ResourceLimit:
        return kExitExhausted;
      case pamalg::ErrorKind::CertificateInvalid:
        return kExitRefuted;
      default:
        return kExitInputError;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
