#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "monoidlab/error.hpp"
#include "monoidlab/word.hpp"

namespace monoidlab {

struct Relation {
  Word lhs;
  Word rhs;
};

// Generators plus defining relations of a monoid. Relations keep their
// declaration order.
class Presentation {
 public:
  Presentation() = default;

  explicit Presentation(Alphabet generators) : generators_(std::move(generators)) {}

  Presentation(Alphabet generators, std::vector<Relation> relations)
      : generators_(std::move(generators)) {
    for (auto& r : relations) {
      add_relation(std::move(r.lhs), std::move(r.rhs));
    }
  }

  void add_relation(Word lhs, Word rhs) {
    if (!(lhs.alphabet() == generators_) || !(rhs.alphabet() == generators_)) {
      throw AlphabetMismatch("relation '" + lhs.to_string() + " = " + rhs.to_string()
                             + "' is not over the presentation's generators");
    }
    relations_.push_back({std::move(lhs), std::move(rhs)});
  }

  // Convenience for building from text, e.g. add_relation("f g f", "f").
  void add_relation(std::string_view lhs, std::string_view rhs) {
    add_relation(Word::parse(generators_, lhs), Word::parse(generators_, rhs));
  }

  Alphabet const&              generators() const noexcept { return generators_; }
  std::vector<Relation> const& relations() const noexcept { return relations_; }

  std::string to_text() const {
    std::string out = "generators:";
    for (auto const& g : generators_.symbols()) {
      out += ' ' + g;
    }
    out += '\n';
    for (auto const& r : relations_) {
      out += "relation: " + r.lhs.to_string() + " = " + r.rhs.to_string() + '\n';
    }
    return out;
  }

 private:
  Alphabet              generators_;
  std::vector<Relation> relations_;
};

// Reads the presentation file format:
//
//   # comment
//   generators: e b
//   relation: e e = e
//   relation: b b = 1
inline Presentation parse_presentation(std::string_view text) {
  std::optional<Presentation> result;
  std::size_t                 line_no = 0;
  std::size_t                 pos     = 0;
  while (pos <= text.size()) {
    auto end  = text.find('\n', pos);
    auto line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos
                                                               : end - pos);
    pos       = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = detail::trim(line);
    if (line.empty()) {
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("expected 'generators:' or 'relation:'", line_no);
    }
    auto key  = detail::trim(line.substr(0, colon));
    auto body = detail::trim(line.substr(colon + 1));

    if (key == "generators") {
      if (result) {
        throw ParseError("duplicate 'generators:' line", line_no);
      }
      std::vector<std::string> names;
      for (auto tok : detail::split_ws(body)) {
        names.emplace_back(tok);
      }
      try {
        result.emplace(Alphabet(AlphabetKind::generators, std::move(names)));
      } catch (InvalidArgument const& e) {
        throw ParseError(e.what(), line_no);
      }
    } else if (key == "relation") {
      if (!result) {
        throw ParseError("'relation:' before 'generators:'", line_no);
      }
      auto eq = body.find('=');
      if (eq == std::string_view::npos || body.find('=', eq + 1) != std::string_view::npos) {
        throw ParseError("relation must have the form 'u = v'", line_no);
      }
      try {
        result->add_relation(Word::parse(result->generators(), body.substr(0, eq)),
                             Word::parse(result->generators(), body.substr(eq + 1)));
      } catch (ParseError const& e) {
        throw ParseError(e.what(), line_no);
      }
    } else {
      throw ParseError("unknown directive '" + std::string(key) + "'", line_no);
    }
  }
  if (!result) {
    throw ParseError("missing 'generators:' line");
  }
  return std::move(*result);
}

inline Presentation read_presentation_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidArgument("cannot open presentation file '" + path + "'");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str());
}

////////////////////////////////////////////////////////////////////////////////
// Presets
////////////////////////////////////////////////////////////////////////////////

inline std::vector<std::string> const& preset_names() {
  static std::vector<std::string> const names{"j-inf", "d-inf", "k-inf", "t", "i2c3", "c2"};
  return names;
}

inline std::string_view preset_text(std::string_view name) {
  if (name == "j-inf") {
    return "generators: e f\nrelation: e e = e\nrelation: f f = f\n";
  } else if (name == "d-inf") {
    return "generators: a b\nrelation: a a = 1\nrelation: b b = 1\n";
  } else if (name == "k-inf") {
    return "generators: e b\nrelation: e e = e\nrelation: b b = 1\n";
  } else if (name == "t") {
    return "generators: f g\nrelation: f f = f\nrelation: f g f = f\nrelation: g g = 1\n";
  } else if (name == "i2c3") {
    return "generators: e g\nrelation: e e = e\nrelation: g g g = 1\n";
  } else if (name == "c2") {
    return "generators: c\nrelation: c c = 1\n";
  }
  throw InvalidArgument("unknown preset '" + std::string(name) + "'");
}

// j-inf: I2 * I2, d-inf: C2 * C2, k-inf: I2 * C2, t: the six element quotient
// of k-inf, i2c3: I2 * C3, c2: the two element group.
inline Presentation preset(std::string_view name) {
  return parse_presentation(preset_text(name));
}

}  // namespace monoidlab
