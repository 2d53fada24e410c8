#include "hornify/corpus.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hornify/marking.hpp"
#include "hornify/psi.hpp"
#include "hornify/xi.hpp"

namespace hornify {

namespace {

OntologyStats process_file(const std::filesystem::path& path) {
  OntologyStats st;
  st.file = path.filename().string();
  const auto begin = std::chrono::steady_clock::now();
  try {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    const Ontology o = parse_ontology(buf.str());
    st.parsed = true;
    st.profileIn = profile_of(o).text();

    const Ontology norm = is_normal_form(o) ? o : normalize_ontology(o);

    const Program pi = pi_translate(norm);
    if (auto m = find_marking(pi)) {
      st.markablePi = true;
      st.markingPi = marking_text(minimize_marking(pi, *m));
    }

    const Program xi = xi_translate(norm);
    if (auto m = find_marking(xi)) {
      st.markableXi = true;
      const Marking minimal = minimize_marking(xi, *m);
      st.markingXi = marking_text(minimal);
      st.hornDL = std::all_of(minimal.begin(), minimal.end(),
                              [](const Predicate& p) { return p.arity() == 1; });
      if (st.hornDL) {
        RewriteOutcome rw = rewrite_ontology(norm, /*renormalize=*/true);
        if (rw.markable) st.profileOut = profile_of(rw.rewritten).text();
      }
    }
  } catch (const std::exception& e) {
    st.parsed = false;
    st.error = e.what();
  }
  const auto end = std::chrono::steady_clock::now();
  st.millis =
      std::chrono::duration<double, std::milli>(end - begin).count();
  return st;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

CorpusStats scan_corpus(const std::string& directory) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(directory, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".dlo")
      files.push_back(entry.path());
  }
  if (ec)
    throw std::runtime_error("cannot read directory '" + directory +
                             "': " + ec.message());
  std::sort(files.begin(), files.end());

  std::vector<std::future<OntologyStats>> pending;
  pending.reserve(files.size());
  for (const auto& f : files)
    pending.push_back(
        std::async(std::launch::async, [f]() { return process_file(f); }));

  CorpusStats stats;
  for (auto& fut : pending) stats.perOntology.push_back(fut.get());
  return stats;
}

std::string to_csv(const CorpusStats& stats) {
  std::string out =
      "file,markable_xi,markable_pi,horn_dl,profile_in,profile_out,millis\n";
  char buf[64];
  for (const auto& st : stats.perOntology) {
    std::snprintf(buf, sizeof buf, "%.3f", st.millis);
    out += st.file + "," + bool_text(st.markableXi) + "," +
           bool_text(st.markablePi) + "," + bool_text(st.hornDL) + "," +
           (st.parsed ? st.profileIn : "parse_error") + "," + st.profileOut +
           "," + buf + "\n";
  }
  return out;
}

std::string to_json(const CorpusStats& stats) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& st : stats.perOntology) {
    nlohmann::json row{{"file", st.file},
                       {"parsed", st.parsed},
                       {"markable_xi", st.markableXi},
                       {"markable_pi", st.markablePi},
                       {"horn_dl", st.hornDL},
                       {"profile_in", st.profileIn},
                       {"profile_out", st.profileOut},
                       {"marking_xi", st.markingXi},
                       {"marking_pi", st.markingPi},
                       {"millis", st.millis}};
    if (!st.error.empty()) row["error"] = st.error;
    arr.push_back(std::move(row));
  }
  return arr.dump(2) + "\n";
}

}  // namespace hornify
