// monoidlab: command line front end.
//
// Exit codes: 0 success or PASS, 1 a FAIL verdict, 2 usage or parse errors.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "monoidlab/monoidlab.hpp"

namespace {

using namespace monoidlab;

constexpr int exit_ok    = 0;
constexpr int exit_fail  = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string preset;
  std::string file;
  std::string target;
  std::string target_file;
  std::string word;
  std::string identity;
  std::string map;
  std::string descriptors;
  std::string u;
  std::string v;
  std::string profile = "quick";
  std::string format  = "human";
  std::size_t n       = 0;
  std::size_t max_witness_len = 0;
  std::size_t max_len         = 0;
  std::size_t budget          = 0;
  std::size_t jobs            = 1;
};

Presentation load(std::string const& preset_name, std::string const& path, char const* what) {
  if (!preset_name.empty() && !path.empty()) {
    throw UsageError(std::string("give either a preset or a file for the ") + what
                     + ", not both");
  }
  if (!path.empty()) {
    return read_presentation_file(path);
  }
  if (preset_name.empty()) {
    throw UsageError(std::string("a preset or presentation file is required for the ") + what);
  }
  return preset(preset_name);
}

RewriteSystem source_system(Config const& c) {
  return orient(load(c.preset, c.file, "source"));
}

FiniteMonoid target_monoid(Config const& c) {
  return build_finite(orient(load(c.target, c.target_file, "target")));
}

void print_lines(std::vector<ReportLine> const& lines, std::string const& format) {
  if (format == "lines") {
    for (auto const& l : lines) {
      std::cout << l.to_line() << '\n';
    }
    return;
  }
  std::size_t width = 0;
  for (auto const& l : lines) {
    width = std::max(width, l.check.size());
  }
  for (auto const& l : lines) {
    std::cout << std::left << std::setw(5) << to_string(l.status) << ' '
              << std::setw(static_cast<int>(width)) << l.check << "  " << l.detail << '\n';
  }
}

int cmd_nf(Config const& c) {
  auto rs = source_system(c);
  std::cout << rs.normal_form(Word::parse(rs.generators(), c.word)) << '\n';
  return exit_ok;
}

int cmd_enumerate(Config const& c) {
  auto rs  = source_system(c);
  auto nfs = enumerate_normal_forms(rs, c.max_len);
  for (auto const& w : nfs) {
    std::cout << w << '\n';
  }
  std::cerr << nfs.size() << " normal forms of length <= " << c.max_len << '\n';
  return exit_ok;
}

int cmd_confluence(Config const& c) {
  auto rs = source_system(c);
  std::cout << "rules:\n" << rs.rules_to_string();
  for (auto const& w : rs.warnings()) {
    std::cout << "warning: " << w << '\n';
  }
  auto pairs = critical_pairs(rs);
  std::cout << "critical pairs: " << pairs.size() << '\n';
  for (auto const& p : pairs) {
    std::cout << "  " << p.peak << " -> " << p.left << " | " << p.right << "  "
              << (p.resolved ? "resolved" : "UNRESOLVED") << '\n';
  }
  auto result = is_locally_confluent(rs);
  if (result) {
    std::cout << "CONFLUENT\n";
    return exit_ok;
  }
  std::cout << "NOT-CONFLUENT peak " << result.first_unresolved->peak << '\n';
  return exit_fail;
}

int cmd_complete(Config const& c) {
  CompletionBudget budget;
  budget.max_rules = c.budget;
  auto result      = knuth_bendix(load(c.preset, c.file, "presentation"), budget);
  std::cout << (result.complete() ? "COMPLETE" : "PARTIAL") << " after " << result.iterations
            << " iterations (" << result.note << "), " << result.system.rules().size()
            << " rules\n"
            << result.system.rules_to_string();
  return result.complete() ? exit_ok : exit_fail;
}

int cmd_finite(Config const& c) {
  auto m = build_finite(source_system(c), c.budget);
  std::cout << m.size() << " elements\n";
  for (Element i = 0; i < m.size(); ++i) {
    std::cout << "  " << i << ": " << m.element(i) << '\n';
  }
  std::cout << m.table_to_string();
  return exit_ok;
}

int cmd_idempotents(Config const& c) {
  auto m   = build_finite(source_system(c), c.budget);
  auto ids = idempotents(m);
  std::cout << ids.size() << " of " << m.size() << " elements are idempotent\n";
  for (auto e : ids) {
    std::cout << "  " << e << ": " << m.element(e) << '\n';
  }
  return exit_ok;
}

int cmd_hom(Config const& c) {
  auto rs = source_system(c);
  auto m  = target_monoid(c);
  try {
    auto h = make_hom(rs, parse_generator_map(c.map, rs, m), m);
    std::cout << "VALID " << h.to_string() << '\n';
    return exit_ok;
  } catch (RelationViolated const& e) {
    std::cout << "RELATION-VIOLATED " << e.what() << '\n';
    return exit_fail;
  }
}

int cmd_check(Config const& c) {
  auto rs = source_system(c);
  auto id = Identity::parse(c.identity);
  auto v  = check_identity(rs, id, c.max_witness_len);
  if (c.format == "lines") {
    print_lines({{v.fails() ? ReportStatus::fail : ReportStatus::pass, "check " + id.to_string(),
                  v.to_string()}},
                c.format);
  } else {
    std::cout << v.to_string() << '\n';
    if (v.fails()) {
      auto [l, r] = evaluate(rs, id, *v.witness);
      std::cout << "  " << l << " != " << r << '\n';
    }
    std::cout << "  " << v.searched << " substitutions searched\n";
  }
  return v.fails() ? exit_fail : exit_ok;
}

int cmd_naturals(Config const& c) {
  auto id    = Identity::parse(c.identity);
  bool holds = holds_in_naturals(id);
  std::cout << (holds ? "HOLDS" : "FAILS") << " in (N, +): lhs " << parikh(id.lhs()).to_string()
            << ", rhs " << parikh(id.rhs()).to_string() << '\n';
  return holds ? exit_ok : exit_fail;
}

void print_isoterm(IsotermReport const& rep, Config const& c) {
  std::string const status = rep.is_isoterm() ? "ISOTERM" : "INCONCLUSIVE";
  std::string const detail = std::to_string(rep.refuted_count) + "/"
                             + std::to_string(rep.candidates_total)
                             + " candidates refuted, witness bound " + std::to_string(rep.bound)
                             + ", " + std::string(IsotermReport::restriction);
  if (c.format == "lines") {
    print_lines({{rep.is_isoterm() ? ReportStatus::pass : ReportStatus::fail,
                  "isoterm " + rep.target.to_string(), status + " " + detail}},
                c.format);
    return;
  }
  std::cout << status << ' ' << rep.target << "\n  " << detail << '\n';
  for (auto const& r : rep.refuted) {
    std::cout << "  refuted " << r.candidate << " by " << r.witness.to_string() << '\n';
  }
  if (rep.refuted.size() < rep.refuted_count) {
    std::cout << "  ... " << rep.refuted_count - rep.refuted.size() << " more refuted\n";
  }
  for (auto const& w : rep.unresolved) {
    std::cout << "  unresolved " << w << '\n';
  }
}

int cmd_isoterm(Config const& c) {
  auto rs     = source_system(c);
  auto target = Identity::parse(c.word + " = " + c.word).lhs();
  auto rep    = isoterm_check(rs, target, c.max_witness_len, {c.jobs, 20});
  print_isoterm(rep, c);
  return rep.is_isoterm() ? exit_ok : exit_fail;
}

int cmd_zimin(Config const& c) {
  if (c.n == 0) {
    throw UsageError("--n must be at least 1");
  }
  if (c.preset.empty() && c.file.empty()) {
    auto z = zimin(c.n);
    std::cout << z << "\n  length " << z.size() << ", " << parikh(z).to_string() << '\n';
    return exit_ok;
  }
  auto rep = zimin_isoterm_check(source_system(c), c.n, c.max_witness_len, {c.jobs, 20});
  print_isoterm(rep, c);
  return rep.is_isoterm() ? exit_ok : exit_fail;
}

int cmd_malcev(Config const& c) {
  auto rs = source_system(c);
  auto m  = target_monoid(c);
  std::vector<ReportLine> lines;
  MalcevReport            rep;
  try {
    rep = malcev_com_fin_evidence(rs, m, parse_generator_map(c.map, rs, m), c.max_len);
  } catch (RelationViolated const& e) {
    print_lines({{ReportStatus::fail, "malcev.homomorphism", e.what()}}, c.format);
    return exit_fail;
  }
  auto name = [&](Element q) { return m.element(q).to_string(); };
  lines.push_back({ReportStatus::pass, "malcev.homomorphism", rep.homomorphism});
  for (auto const& cl : rep.classes) {
    std::string members;
    for (std::size_t i = 0; i < cl.members.size() && i < 4; ++i) {
      members += (i == 0 ? "" : ", ") + cl.members[i].to_string();
    }
    if (cl.members.size() > 4) {
      members += ", ...";
    }
    lines.push_back({ReportStatus::info, "malcev.class " + name(cl.image),
                     std::to_string(cl.members.size()) + " members up to length "
                         + std::to_string(c.max_len) + ": " + members
                         + (cl.idempotent ? "" : " (not a subsemigroup, not checked)")});
  }
  for (auto const& v : rep.idempotent_classes) {
    lines.push_back(
        {v.commutative ? ReportStatus::pass : ReportStatus::fail,
         "malcev.commutative " + name(v.image),
         std::to_string(v.pairs_checked) + " pairs up to length " + std::to_string(v.bound)
             + (v.counterexample ? ", " + v.counterexample->first.to_string() + " * "
                                       + v.counterexample->second.to_string() + " != "
                                       + v.counterexample->second.to_string() + " * "
                                       + v.counterexample->first.to_string()
                                 : std::string())});
  }
  if (!c.descriptors.empty()) {
    std::ifstream in(c.descriptors);
    if (!in) {
      throw UsageError("cannot open descriptor file '" + c.descriptors + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    auto h     = make_hom(rs, parse_generator_map(c.map, rs, m), m);
    auto match = match_class_descriptors(h, c.max_len, parse_class_descriptors(ss.str(), h));
    lines.push_back({match ? ReportStatus::pass : ReportStatus::fail, "malcev.descriptors",
                     match ? "all classes match up to length " + std::to_string(c.max_len)
                           : match.mismatches.front()});
  }
  lines.push_back({rep.passed() ? ReportStatus::pass : ReportStatus::fail, "malcev.com-fin",
                   "bounded evidence up to length " + std::to_string(c.max_len)});
  print_lines(lines, c.format);
  return any_failed(lines) ? exit_fail : exit_ok;
}

int cmd_freepair(Config const& c) {
  auto rs  = source_system(c);
  auto u   = Word::parse(rs.generators(), c.u);
  auto v   = Word::parse(rs.generators(), c.v);
  auto res = free_pair_check(rs, u, v, c.max_len);
  if (res.free) {
    std::cout << "FREE " << res.products << " products up to length " << c.max_len
              << " pairwise distinct\n";
    return exit_ok;
  }
  std::cout << "COLLISION " << res.collision->first << " = " << res.collision->second << " = "
            << *res.value << '\n';
  return exit_fail;
}

int cmd_reproduce(Config const& c) {
  if (c.profile != "quick" && c.profile != "full") {
    throw UsageError("--profile must be quick or full");
  }
  auto lines = reproduce(c.profile == "full" ? Profile::full : Profile::quick, c.jobs);
  print_lines(lines, c.format);
  return any_failed(lines) ? exit_fail : exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"monoidlab: string rewriting and identities of finitely presented monoids"};
  app.require_subcommand(1);
  Config cfg;

  std::size_t default_jobs = 1;
  if (char const* env = std::getenv("MONOIDLAB_JOBS")) {
    try {
      default_jobs = std::max<std::size_t>(1, std::stoul(env));
    } catch (std::exception const&) {
      std::cerr << "ignoring invalid MONOIDLAB_JOBS='" << env << "'\n";
    }
  }
  cfg.jobs = default_jobs;

  // Bound fields are shared between subcommands, so defaults are applied
  // after parsing, only for the subcommand that ran.
  struct Default {
    CLI::App*    sub;
    CLI::Option* opt;
    std::size_t* var;
    std::size_t  value;
  };
  std::vector<Default> defaults;
  auto bound = [&](CLI::App* sub, std::string const& name, std::size_t& var,
                   std::string const& desc, std::size_t value) {
    auto* opt = sub->add_option(name, var, desc)->default_str(std::to_string(value));
    defaults.push_back({sub, opt, &var, value});
  };

  auto source = [&](CLI::App* sub, bool required = true) {
    auto* grp = sub->add_option_group("source");
    grp->add_option("--preset", cfg.preset, "Preset name")
        ->check(CLI::IsMember(preset_names()));
    grp->add_option("--file", cfg.file, "Presentation file")->check(CLI::ExistingFile);
    if (required) {
      grp->require_option(1);
    } else {
      grp->require_option(0, 1);
    }
  };
  auto target = [&](CLI::App* sub) {
    auto* grp = sub->add_option_group("target");
    grp->add_option("--target", cfg.target, "Target preset")
        ->check(CLI::IsMember(preset_names()));
    grp->add_option("--target-file", cfg.target_file, "Target presentation file")
        ->check(CLI::ExistingFile);
    grp->require_option(1);
    sub->add_option("--map", cfg.map, "Generator map, e.g. e=f,b=g")->required();
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--jobs", cfg.jobs, "Worker threads (default $MONOIDLAB_JOBS or 1)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"human", "lines"}));
  };

  auto* nf = app.add_subcommand("nf", "Normal form of a word");
  source(nf);
  nf->add_option("--word", cfg.word, "Word, e.g. \"e b b e\"")->required();
  common(nf);

  auto* en = app.add_subcommand("enumerate", "Normal forms up to a length");
  source(en);
  bound(en, "--max-len", cfg.max_len, "Maximum length", 4);
  common(en);

  auto* co = app.add_subcommand("confluence", "Critical pairs and local confluence");
  source(co);
  common(co);

  auto* kb = app.add_subcommand("complete", "Knuth-Bendix completion");
  source(kb);
  bound(kb, "--budget", cfg.budget, "Maximum number of rules", 1000);
  common(kb);

  auto* fi = app.add_subcommand("finite", "Elements and Cayley table of a finite monoid");
  source(fi);
  bound(fi, "--budget", cfg.budget, "Maximum number of elements", default_element_budget);
  common(fi);

  auto* id = app.add_subcommand("idempotents", "Idempotents of a finite monoid");
  source(id);
  bound(id, "--budget", cfg.budget, "Maximum number of elements", default_element_budget);
  common(id);

  auto* ho = app.add_subcommand("hom", "Validate a homomorphism onto a finite monoid");
  source(ho);
  target(ho);
  common(ho);

  auto* ch = app.add_subcommand("check", "Bounded witness search for an identity");
  source(ch);
  ch->add_option("--identity", cfg.identity, "Identity, e.g. \"x x y = y x x\"")->required();
  bound(ch, "--max-witness-len", cfg.max_witness_len, "Longest substituted value", 3);
  common(ch);

  auto* na = app.add_subcommand("naturals", "Does an identity hold in (N, +)?");
  na->add_option("--identity", cfg.identity, "Identity")->required();
  common(na);

  auto* is = app.add_subcommand("isoterm", "Isoterm check over balanced candidates");
  source(is);
  is->add_option("--word", cfg.word, "Word over variables")->required();
  bound(is, "--max-witness-len", cfg.max_witness_len, "Longest substituted value", 2);
  common(is);

  auto* zi = app.add_subcommand("zimin", "Zimin word, or its isoterm check with --preset/--file");
  source(zi, false);
  zi->add_option("--n", cfg.n, "Index n of Z_n")->required();
  bound(zi, "--max-witness-len", cfg.max_witness_len, "Longest substituted value", 2);
  common(zi);

  auto* ma = app.add_subcommand("malcev", "Com o Fin evidence via a finite quotient");
  source(ma);
  target(ma);
  bound(ma, "--max-len", cfg.max_len, "Length bound", 10);
  ma->add_option("--descriptors", cfg.descriptors, "Class descriptor file")
      ->check(CLI::ExistingFile);
  common(ma);

  auto* fp = app.add_subcommand("freepair", "Do u and v generate a free subsemigroup?");
  source(fp);
  fp->add_option("--u", cfg.u, "First word")->required();
  fp->add_option("--v", cfg.v, "Second word")->required();
  bound(fp, "--max-len", cfg.max_len, "Longest product", 6);
  common(fp);

  auto* re = app.add_subcommand("reproduce", "Run the verification suite");
  re->add_option("--profile", cfg.profile, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}));
  common(re);

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return exit_usage;
  }

  for (auto const& d : defaults) {
    if (d.sub->parsed() && d.opt->count() == 0) {
      *d.var = d.value;
    }
  }

  try {
    auto* sub = app.get_subcommands().front();
    auto  n   = sub->get_name();
    if (n == "nf") return cmd_nf(cfg);
    if (n == "enumerate") return cmd_enumerate(cfg);
    if (n == "confluence") return cmd_confluence(cfg);
    if (n == "complete") return cmd_complete(cfg);
    if (n == "finite") return cmd_finite(cfg);
    if (n == "idempotents") return cmd_idempotents(cfg);
    if (n == "hom") return cmd_hom(cfg);
    if (n == "check") return cmd_check(cfg);
    if (n == "naturals") return cmd_naturals(cfg);
    if (n == "isoterm") return cmd_isoterm(cfg);
    if (n == "zimin") return cmd_zimin(cfg);
    if (n == "malcev") return cmd_malcev(cfg);
    if (n == "freepair") return cmd_freepair(cfg);
    if (n == "reproduce") return cmd_reproduce(cfg);
  } catch (UsageError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (ParseError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (InvalidArgument const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (AlphabetMismatch const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (Error const& e) {
    std::cout << "FAIL " << e.what() << '\n';
    return exit_fail;
  }
  return exit_usage;
}
