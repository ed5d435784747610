// Command-line front end: parse shift specification files, dispatch the
// library analyses, and emit deterministic JSON reports (DOT for graphs).
//
// Exit codes: 0 affirmative/success, 1 negative/refuted, 2 parse or semantic
// error, 3 operation unsupported for the spec, 4 undecidable under the
// declared bounds.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "limshift/classify.hpp"
#include "limshift/conjugacy.hpp"
#include "limshift/entropy.hpp"
#include "limshift/presentation.hpp"
#include "limshift/specfile.hpp"

using namespace limshift;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SemanticError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SpecDocument load_document(const std::string& path) { return parse_spec(read_text_file(path)); }

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::yes: return "yes";
        case Verdict::no: return "no";
        default: return "unknown";
    }
}

// Words print as digit strings for single-digit alphabets and as
// comma-separated letters otherwise.
std::string letters_string(const std::vector<int>& letters, int p) {
    std::string out;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (p > 9 && i > 0) out += ',';
        out += std::to_string(letters[i]);
    }
    return out;
}

std::string word_string(const RunWord& w, int p) { return letters_string(w.letters(), p); }

std::vector<int> parse_letters(const std::string& text, int p) {
    std::vector<int> out;
    if (text.find(',') != std::string::npos) {
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t comma = text.find(',', start);
            std::string piece =
                text.substr(start, comma == std::string::npos ? comma : comma - start);
            try {
                std::size_t used = 0;
                int v = std::stoi(piece, &used);
                if (used != piece.size()) throw std::invalid_argument(piece);
                out.push_back(v);
            } catch (const std::exception&) {
                throw SemanticError("word: '" + piece + "' is not a letter");
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    } else {
        for (char c : text) {
            if (c < '1' || c > '9')
                throw SemanticError("word: letters are digits 1-9 or comma-separated integers");
            out.push_back(c - '0');
        }
    }
    if (out.empty()) throw SemanticError("word: must be nonempty");
    for (int c : out)
        if (c < 1 || c > p)
            throw SemanticError("word: letter " + std::to_string(c) + " outside the alphabet");
    return out;
}

ordered_json spec_json(const SpecDocument& doc) {
    ordered_json j;
    if (doc.name) j["name"] = *doc.name;
    j["alphabet"] = doc.alphabet;
    j["variant"] = doc.variant == Variant::ordered ? "ordered" : "generalized";
    return j;
}

ordered_json report_json(const char* command, const SpecDocument& doc) {
    ordered_json j;
    j["schema"] = 1;
    j["command"] = command;
    j["spec"] = spec_json(doc);
    return j;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

ordered_json refutation_json(const OffsetRefutation& r) {
    ordered_json j;
    switch (r.reason) {
        case OffsetRefutation::Reason::sum_nonzero:
            j["reason"] = "sum-nonzero";
            j["sum"] = r.sum;
            break;
        case OffsetRefutation::Reason::cardinality_mismatch:
            j["reason"] = "cardinality-mismatch";
            j["letter"] = r.letter;
            j["index"] = r.index;
            break;
        case OffsetRefutation::Reason::element_mismatch:
            j["reason"] = "element-mismatch";
            j["letter"] = r.letter;
            j["index"] = r.index;
            break;
    }
    return j;
}

ordered_json block_map_to_json(const BlockMap& m) {
    ordered_json j;
    j["schema"] = 1;
    j["kind"] = "block_map";
    j["p"] = m.p;
    j["memory"] = m.memory;
    j["anticipation"] = m.anticipation;
    ordered_json rule;
    if (m.table) {
        rule["type"] = "table";
        ordered_json entries;
        for (const auto& [window, letter] : *m.table) entries[window] = letter;
        rule["entries"] = entries;
    } else if (m.transitions) {
        rule["type"] = "transitions";
        rule["offsets"] = m.transitions->d.d;
        rule["partials"] = m.transitions->partials;
        rule["radius"] = m.transitions->radius;
    } else {
        throw SemanticError("block map: neither table nor transition rule present");
    }
    j["rule"] = rule;
    return j;
}

BlockMap block_map_from_json(const ordered_json& j) {
    if (!j.is_object() || j.value("kind", "") != "block_map")
        throw SemanticError("block map file: expected a block_map document");
    BlockMap m;
    m.p = j.at("p").get<int>();
    m.memory = j.at("memory").get<int>();
    m.anticipation = j.at("anticipation").get<int>();
    if (m.p < 2 || m.memory < 0 || m.anticipation < 0)
        throw SemanticError("block map file: invalid dimensions");
    const ordered_json& rule = j.at("rule");
    std::string type = rule.at("type").get<std::string>();
    if (type == "table") {
        std::map<std::string, int> table;
        for (const auto& [window, letter] : rule.at("entries").items())
            table[window] = letter.get<int>();
        m.table = std::move(table);
    } else if (type == "transitions") {
        TransitionRule tr;
        tr.d.d = rule.at("offsets").get<std::vector<int>>();
        tr.partials = rule.at("partials").get<std::vector<int>>();
        tr.radius = rule.at("radius").get<int>();
        if (static_cast<int>(tr.d.d.size()) != m.p ||
            static_cast<int>(tr.partials.size()) != m.p - 1)
            throw SemanticError("block map file: rule arity does not match the alphabet");
        m.transitions = std::move(tr);
    } else {
        throw SemanticError("block map file: unknown rule type '" + type + "'");
    }
    return m;
}

int run_classify(const std::string& spec_path) {
    SpecDocument doc = load_document(spec_path);
    ClassificationReport r = classify_shift(doc.shift());
    ordered_json j = report_json("classify", doc);
    j["sft"] = verdict_name(r.sft);
    j["sofic"] = verdict_name(r.sofic);
    j["mixing"] = verdict_name(r.mixing);
    j["irreducible"] = r.irreducible;
    if (r.gcd_value) {
        j["transition_length_gcd"] = *r.gcd_value;
        j["mixing_truncation"] = r.mixing_truncation;
    }
    if (r.synchronizing_example)
        j["synchronizing_word"] = word_string(*r.synchronizing_example, doc.alphabet);
    if (r.forbidden_words) {
        ordered_json words = ordered_json::array();
        for (const RunWord& w : *r.forbidden_words) words.push_back(word_string(w, doc.alphabet));
        j["forbidden_words"] = words;
    }
    emit(j);
    bool unknown = r.sft == Verdict::unknown || r.sofic == Verdict::unknown ||
                   r.mixing == Verdict::unknown;
    return unknown ? 4 : 0;
}

int run_entropy(const std::string& spec_path, double tol, const std::string& method,
                int truncate) {
    SpecDocument doc = load_document(spec_path);
    ShiftSpec s = doc.shift();
    ordered_json j = report_json("entropy", doc);
    j["log_base"] = "e";
    j["tolerance"] = tol;
    if (truncate > 0) {
        s = truncated_shift(s, truncate);
        j["truncate"] = truncate;
    }
    std::optional<double> genfun_value, perron_value;
    if (method == "genfun" || method == "both") {
        EntropyResult r = solve_entropy(s, tol);
        ordered_json jr;
        jr["value"] = r.value;
        jr["lambda"] = r.lambda;
        jr["truncation_l"] = r.truncation_l;
        jr["certificate"] = ordered_json::array({r.certificate.first, r.certificate.second});
        j["genfun"] = jr;
        genfun_value = r.value;
    }
    if (method == "perron" || method == "both") {
        GraphPresentation g = build_follower_automaton(s);
        double value = spectral_entropy(g, tol);
        ordered_json jr;
        jr["value"] = value;
        jr["states"] = g.states.size();
        j["perron"] = jr;
        perron_value = value;
    }
    if (genfun_value && perron_value)
        j["difference"] = std::abs(*genfun_value - *perron_value);
    emit(j);
    return 0;
}

int run_words(const std::string& spec_path, int n, bool count_only) {
    SpecDocument doc = load_document(spec_path);
    ShiftSpec s = doc.shift();
    ordered_json j = report_json("words", doc);
    j["n"] = n;
    j["count"] = count_words(s, n);
    if (!count_only) {
        std::vector<RunWord> ws = enumerate_words(s, n);
        std::vector<std::string> strings;
        strings.reserve(ws.size());
        for (const RunWord& w : ws) strings.push_back(word_string(w, doc.alphabet));
        std::sort(strings.begin(), strings.end());
        j["words"] = strings;
    }
    emit(j);
    return 0;
}

int run_spectrum(const std::string& spec_path, int L) {
    SpecDocument doc = load_document(spec_path);
    CoreLengthSpectrum sp = length_spectrum(doc.shift(), L);
    ordered_json j = report_json("spectrum", doc);
    j["L"] = L;
    ordered_json counts = ordered_json::array();
    for (int l = 1; l <= L; ++l) counts.push_back(sp.counts[static_cast<std::size_t>(l)]);
    j["counts"] = counts;
    emit(j);
    return 0;
}

int run_periodic(const std::string& spec_path, int n) {
    SpecDocument doc = load_document(spec_path);
    ShiftSpec s = doc.shift();
    ordered_json j = report_json("periodic", doc);
    j["n"] = n;
    ordered_json counts = ordered_json::array();
    for (int k = 1; k <= n; ++k) counts.push_back(periodic_points(s, k));
    j["counts"] = counts;
    emit(j);
    return 0;
}

int run_graph(const std::string& spec_path, const std::string& dot_path) {
    SpecDocument doc = load_document(spec_path);
    GraphPresentation g = build_follower_automaton(doc.shift());
    std::ofstream out(dot_path, std::ios::binary);
    if (!out) throw SemanticError("cannot write file: " + dot_path);
    out << export_dot(g);
    ordered_json j = report_json("graph", doc);
    j["states"] = g.states.size();
    j["edges"] = g.edges.size();
    j["right_resolving"] = is_right_resolving(g);
    j["dot"] = dot_path;
    emit(j);
    return 0;
}

int run_decompose(const std::string& spec_path, const std::string& word) {
    SpecDocument doc = load_document(spec_path);
    ShiftSpec s = doc.shift();
    RunWord w = RunWord::from_letters(parse_letters(word, doc.alphabet));
    Decomposition d = decompose(s, w);
    ordered_json j = report_json("decompose", doc);
    j["word"] = word_string(w, doc.alphabet);
    j["prefix"] = word_string(d.prefix, doc.alphabet);
    ordered_json blocks = ordered_json::array();
    for (const CoreBlock& b : d.core_blocks) blocks.push_back(word_string(b.word(), doc.alphabet));
    j["core_blocks"] = blocks;
    j["suffix"] = word_string(d.suffix, doc.alphabet);
    emit(j);
    return 0;
}

int run_conjugacy_check(const std::string& a_path, const std::string& b_path, int L, int N) {
    SpecDocument da = load_document(a_path);
    SpecDocument db = load_document(b_path);
    ShiftSpec s = da.shift(), t = db.shift();
    ordered_json j;
    j["schema"] = 1;
    j["command"] = "conjugacy-check";
    j["left"] = spec_json(da);
    j["right"] = spec_json(db);
    OffsetCheck c = sufficient_offsets(s, t);
    j["accepted"] = c.accepted();
    if (c.accepted())
        j["offsets"] = c.offsets->d;
    else
        j["refutation"] = refutation_json(*c.refutation);
    ComparisonResult sp = length_spectra_equal(s, t, L);
    j["spectra_L"] = L;
    j["spectra_equal"] = sp.equal;
    if (!sp.equal) j["spectra_first_mismatch"] = sp.first_mismatch;
    ComparisonResult pc = periodic_counts_equal(s, t, N);
    j["periodic_N"] = N;
    j["periodic_equal"] = pc.equal;
    if (!pc.equal) j["periodic_first_mismatch"] = pc.first_mismatch;
    emit(j);
    return c.accepted() && sp.equal && pc.equal ? 0 : 1;
}

int run_conjugacy_synthesize(const std::string& a_path, const std::string& b_path,
                             const std::string& out_path) {
    SpecDocument da = load_document(a_path);
    SpecDocument db = load_document(b_path);
    ShiftSpec s = da.shift(), t = db.shift();
    ordered_json j;
    j["schema"] = 1;
    j["command"] = "conjugacy-synthesize";
    j["left"] = spec_json(da);
    j["right"] = spec_json(db);
    OffsetCheck c = sufficient_offsets(s, t);
    j["accepted"] = c.accepted();
    if (!c.accepted()) {
        j["refutation"] = refutation_json(*c.refutation);
        emit(j);
        return 1;
    }
    BlockMap phi = synthesize_block_map(s, t, *c.offsets);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw SemanticError("cannot write file: " + out_path);
    out << block_map_to_json(phi).dump(2) << "\n";
    j["offsets"] = c.offsets->d;
    j["memory"] = phi.memory;
    j["anticipation"] = phi.anticipation;
    j["map"] = out_path;
    emit(j);
    return 0;
}

int run_conjugacy_verify(const std::string& a_path, const std::string& b_path,
                         const std::string& map_path, int n) {
    SpecDocument da = load_document(a_path);
    SpecDocument db = load_document(b_path);
    BlockMap phi = block_map_from_json(ordered_json::parse(read_text_file(map_path)));
    VerifyParams params{n, n, 2 * n};
    ConjugacyEvidence ev = verify_conjugacy_evidence(phi, da.shift(), db.shift(), params);
    ordered_json j;
    j["schema"] = 1;
    j["command"] = "conjugacy-verify";
    j["left"] = spec_json(da);
    j["right"] = spec_json(db);
    j["map"] = map_path;
    ordered_json params_j;
    params_j["word_len"] = params.word_len;
    params_j["period_bound"] = params.period_bound;
    params_j["core_len"] = params.core_len;
    j["params"] = params_j;
    ordered_json checks;
    checks["induction"] = ev.induction_ok;
    checks["image"] = ev.image_ok;
    checks["periodic"] = ev.periodic_ok;
    checks["pi"] = ev.pi_ok;
    j["checks"] = checks;
    j["all_passed"] = ev.all_passed();
    emit(j);
    return ev.all_passed() ? 0 : 1;
}

int fail(const std::string& message, int code) {
    std::cerr << "error: " << message << "\n";
    return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const UnknownMembership& e) {
        return fail(e.what(), 4);
    } catch (const InfinitudeUnknown& e) {
        return fail(e.what(), 4);
    } catch (const WordNotInLanguage& e) {
        return fail(e.what(), 1);
    } catch (const DecompositionNotFound& e) {
        return fail(e.what(), 1);
    } catch (const VariantMismatch& e) {
        return fail(e.what(), 3);
    } catch (const NotSofic& e) {
        return fail(e.what(), 3);
    } catch (const NotSft& e) {
        return fail(e.what(), 3);
    } catch (const CapExceeded& e) {
        return fail(e.what(), 3);
    } catch (const AlphabetSizeMismatch& e) {
        return fail(e.what(), 3);
    } catch (const EmptyGraph& e) {
        return fail(e.what(), 3);
    } catch (const ConvergenceFailure& e) {
        return fail(e.what(), 3);
    } catch (const Error& e) {
        return fail(e.what(), 2);  // parse, semantic, and remaining input errors
    } catch (const nlohmann::json::exception& e) {
        return fail(e.what(), 2);
    } catch (const std::exception& e) {
        return fail(e.what(), 2);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Construction and analysis of run-length limited shift spaces"};
    app.name("limshift");
    app.require_subcommand(1);

    std::string classify_spec;
    CLI::App* cmd_classify =
        app.add_subcommand("classify", "SFT / sofic / mixing classification report");
    cmd_classify->add_option("spec", classify_spec, "shift spec file")->required();

    std::string entropy_spec;
    double entropy_tol = 1e-9;
    std::string entropy_method = "genfun";
    int entropy_truncate = 0;
    CLI::App* cmd_entropy =
        app.add_subcommand("entropy", "certified topological entropy (natural log)");
    cmd_entropy->add_option("spec", entropy_spec, "shift spec file")->required();
    cmd_entropy->add_option("--tol", entropy_tol, "certification tolerance")
        ->check(CLI::PositiveNumber);
    cmd_entropy->add_option("--method", entropy_method, "genfun, perron, or both")
        ->check(CLI::IsMember({"genfun", "perron", "both"}));
    cmd_entropy
        ->add_option("--truncate", entropy_truncate,
                     "keep only the first N elements of every run set")
        ->check(CLI::PositiveNumber);

    std::string words_spec;
    int words_n = 0;
    bool words_count_only = false;
    CLI::App* cmd_words = app.add_subcommand("words", "count or list the words of a length");
    cmd_words->add_option("spec", words_spec, "shift spec file")->required();
    cmd_words->add_option("-n", words_n, "word length")->required()->check(CLI::PositiveNumber);
    cmd_words->add_flag("--count-only", words_count_only, "suppress the word list");

    std::string spectrum_spec;
    int spectrum_L = 0;
    CLI::App* cmd_spectrum =
        app.add_subcommand("spectrum", "core-block counts by length");
    cmd_spectrum->add_option("spec", spectrum_spec, "shift spec file")->required();
    cmd_spectrum->add_option("-L", spectrum_L, "largest block length")
        ->required()
        ->check(CLI::PositiveNumber);

    std::string periodic_spec;
    int periodic_n = 0;
    CLI::App* cmd_periodic =
        app.add_subcommand("periodic", "periodic-point counts for periods 1..n");
    cmd_periodic->add_option("spec", periodic_spec, "shift spec file")->required();
    cmd_periodic->add_option("-n", periodic_n, "largest period")
        ->required()
        ->check(CLI::PositiveNumber);

    std::string graph_spec, graph_dot;
    CLI::App* cmd_graph =
        app.add_subcommand("graph", "follower-set graph presentation as DOT");
    cmd_graph->add_option("spec", graph_spec, "shift spec file")->required();
    cmd_graph->add_option("--dot", graph_dot, "output DOT file")->required();

    std::string decompose_spec, decompose_word;
    CLI::App* cmd_decompose =
        app.add_subcommand("decompose", "prefix / core blocks / suffix factorization");
    cmd_decompose->add_option("spec", decompose_spec, "shift spec file")->required();
    cmd_decompose->add_option("--word", decompose_word, "word to factor")->required();

    CLI::App* cmd_conjugacy = app.add_subcommand("conjugacy", "conjugacy analysis");
    cmd_conjugacy->require_subcommand(1);
    std::string conj_a, conj_b, conj_out, conj_map;
    int conj_L = 30, conj_N = 10, conj_n = 10;
    CLI::App* cmd_check =
        cmd_conjugacy->add_subcommand("check", "offset condition plus invariant comparison");
    cmd_check->add_option("left", conj_a, "left shift spec file")->required();
    cmd_check->add_option("right", conj_b, "right shift spec file")->required();
    cmd_check->add_option("-L", conj_L, "length-spectrum horizon")->check(CLI::PositiveNumber);
    cmd_check->add_option("-N", conj_N, "periodic-count horizon")->check(CLI::PositiveNumber);
    CLI::App* cmd_synthesize =
        cmd_conjugacy->add_subcommand("synthesize", "emit the sliding block code");
    cmd_synthesize->add_option("left", conj_a, "left shift spec file")->required();
    cmd_synthesize->add_option("right", conj_b, "right shift spec file")->required();
    cmd_synthesize->add_option("--out", conj_out, "output block map file")->required();
    CLI::App* cmd_verify =
        cmd_conjugacy->add_subcommand("verify", "run the evidence checks for a block map");
    cmd_verify->add_option("left", conj_a, "left shift spec file")->required();
    cmd_verify->add_option("right", conj_b, "right shift spec file")->required();
    cmd_verify->add_option("--map", conj_map, "block map file")->required();
    cmd_verify->add_option("-n", conj_n, "verification horizon")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*cmd_classify) return guarded([&] { return run_classify(classify_spec); });
    if (*cmd_entropy)
        return guarded(
            [&] { return run_entropy(entropy_spec, entropy_tol, entropy_method,
                                     entropy_truncate); });
    if (*cmd_words) return guarded([&] { return run_words(words_spec, words_n, words_count_only); });
    if (*cmd_spectrum) return guarded([&] { return run_spectrum(spectrum_spec, spectrum_L); });
    if (*cmd_periodic) return guarded([&] { return run_periodic(periodic_spec, periodic_n); });
    if (*cmd_graph) return guarded([&] { return run_graph(graph_spec, graph_dot); });
    if (*cmd_decompose)
        return guarded([&] { return run_decompose(decompose_spec, decompose_word); });
    if (*cmd_check) return guarded([&] { return run_conjugacy_check(conj_a, conj_b, conj_L, conj_N); });
    if (*cmd_synthesize)
        return guarded([&] { return run_conjugacy_synthesize(conj_a, conj_b, conj_out); });
    if (*cmd_verify)
        return guarded([&] { return run_conjugacy_verify(conj_a, conj_b, conj_map, conj_n); });
    return 2;
}
