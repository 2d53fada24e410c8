#pragma once
// Directory-level markability statistics: scans a corpus of ontology files,
// runs both translations through the marking check, attempts the full Horn
// rewriting, and reports per-file results as CSV or JSON.

#include <string>
#include <vector>

namespace hornify {

struct OntologyStats {
  std::string file;            // file name relative to the scanned directory
  bool parsed = false;
  std::string error;           // parse/processing error when !parsed
  bool markableXi = false;     // skolemized translation admits a marking
  bool markablePi = false;     // direct translation admits a marking
  bool hornDL = false;         // markableXi and the minimal marking is
                               // unary-only, i.e. expressible as a Horn DL
  std::string profileIn;       // DL profile of the input
  std::string profileOut;      // profile of the rewriting (empty if none)
  std::string markingXi;       // minimal marking text (empty if unmarkable)
  std::string markingPi;       // minimal marking text for the direct mode
  double millis = 0.0;         // wall-clock processing time for the file
};

struct CorpusStats {
  std::vector<OntologyStats> perOntology;  // sorted by file name
};

// Scans every .dlo file in the directory (non-recursive); files are
// processed in parallel and reported in name order. Throws
// std::runtime_error if the directory cannot be read.
CorpusStats scan_corpus(const std::string& directory);

// Header: file,markable_xi,markable_pi,horn_dl,profile_in,profile_out,millis
std::string to_csv(const CorpusStats& stats);

std::string to_json(const CorpusStats& stats);

}  // namespace hornify
