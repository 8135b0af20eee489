#pragma once

#include "polync/core.hpp"
#include "polync/generators.hpp"
#include "polync/json_io.hpp"
#include "polync/report.hpp"
#include "polync/resolution.hpp"

#include <CLI11.hpp>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace polync {
namespace cli {

// Exit codes: 0 all checks pass, 1 checks failed, 2 malformed input or
// unanalyzable request.
inline constexpr int kOk = 0;
inline constexpr int kChecksFailed = 1;
inline constexpr int kBadInput = 2;

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("", "cannot open file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str());
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw SchemaError("", "cannot write file " + path);
    out << text;
}

inline bool want_color(std::ostream& os) {
    const char* env = std::getenv("POLYNC_COLOR");
    if (env && std::string(env) == "never") return false;
    if (env && std::string(env) == "always") return true;
    // auto: only a real terminal gets ANSI codes.
    return &os == &std::cout && ::isatty(::fileno(stdout)) != 0;
}

struct CommonInputs {
    std::string input;
    std::string labels;
    std::string coloring;
    std::string components;
    std::string period;
    std::string output;
    std::string format = "text";
};

struct Loaded {
    PolysimplicialComplex complex;
    std::optional<EdgeLabeling> labels;
    std::optional<Coloring> coloring;
    std::optional<ComponentSet> components;
    std::optional<PeriodHom> period;
};

inline Loaded load_inputs(const CommonInputs& in) {
    Loaded l{complex_from_json(load_json_file(in.input)), std::nullopt, std::nullopt,
             std::nullopt, std::nullopt};
    if (!in.labels.empty()) l.labels = labels_from_json(load_json_file(in.labels));
    if (!in.coloring.empty()) l.coloring = coloring_from_json(load_json_file(in.coloring));
    if (!in.components.empty())
        l.components = components_from_json(load_json_file(in.components), l.complex);
    if (!in.period.empty()) l.period = period_from_json(load_json_file(in.period));
    return l;
}

/// Given coloring if supplied, canonical otherwise; throws kChecksFailed-style
/// errors by returning nullopt with the obstruction in `why`.
inline std::optional<Coloring> pick_coloring(const PolysimplicialComplex& cx,
                                             const std::optional<Coloring>& given,
                                             std::string& why) {
    if (given) {
        if (!check_coloring(cx, *given)) {
            why = "supplied coloring is not a valid S-coloring";
            return std::nullopt;
        }
        return *given;
    }
    ColorabilityResult res = is_colorable(cx);
    if (!res.colorable()) {
        why = "complex is not colorable (obstruction at cell " +
              std::to_string(res.obstruction->cell) + ")";
        return std::nullopt;
    }
    return std::move(*res.coloring);
}

inline void emit(const CommonInputs& in, const Json& json_payload, const std::string& text,
                 std::ostream& out) {
    const std::string rendered = in.format == "json" ? json_payload.dump(2) + "\n" : text;
    if (!in.output.empty())
        write_text_file(in.output, rendered);
    else
        out << rendered;
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"polync: combinatorics of polysimplicial complexes and multiparameter "
                 "Kulikov models"};
    app.require_subcommand(1);

    CommonInputs in;
    std::string gen_name;
    std::string color_name;
    std::string matrix_file;
    CellId square_id = -1;
    std::string diag_spec;
    bool resolve_all = false;

    auto add_common = [&](CLI::App* cmd, bool need_input = true) {
        auto* opt = cmd->add_option("--input,-i", in.input, "complex JSON file");
        if (need_input) opt->required();
        cmd->add_option("--labels,-l", in.labels, "edge labels JSON file");
        cmd->add_option("--coloring,-c", in.coloring, "coloring JSON file");
        cmd->add_option("--components", in.components, "component lattices JSON file");
        cmd->add_option("--period", in.period, "period homomorphism JSON file");
        cmd->add_option("--output,-o", in.output, "write the result here instead of stdout");
        cmd->add_option("--format,-f", in.format, "output format: text or json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* c_validate = app.add_subcommand("validate", "check all structural invariants");
    add_common(c_validate);
    CLI::App* c_classify = app.add_subcommand("classify", "homeomorphism type of the complex");
    add_common(c_classify);
    CLI::App* c_color = app.add_subcommand("color", "canonical coloring or obstruction trace");
    add_common(c_color);
    CLI::App* c_analyze = app.add_subcommand("analyze", "full combinatorial report");
    add_common(c_analyze);
    CLI::App* c_slabs = app.add_subcommand("slabs", "slab membership for one color");
    add_common(c_slabs);
    c_slabs->add_option("--color", color_name, "color name")->required();
    CLI::App* c_params = app.add_subcommand("params", "naive parameter count");
    add_common(c_params);
    CLI::App* c_monodromy = app.add_subcommand("monodromy", "monodromy Gram matrix analysis");
    add_common(c_monodromy, false);
    c_monodromy->add_option("--matrix", matrix_file, "analyze a standalone Gram matrix file");
    CLI::App* c_lattice = app.add_subcommand("lattice", "numerically Cartier lattice and "
                                                        "d-semistability");
    add_common(c_lattice);
    CLI::App* c_resolve = app.add_subcommand("resolve", "subdivide squares into triangles");
    add_common(c_resolve);
    c_resolve->add_option("--square", square_id, "square cell to subdivide");
    c_resolve->add_option("--diag", diag_spec, "diagonal as a,c vertex pair");
    c_resolve->add_flag("--all", resolve_all, "resolve every square");
    CLI::App* c_generate = app.add_subcommand("generate", "emit a bundled example");
    c_generate->add_option("name", gen_name, "example name")->required();
    c_generate->add_option("--output,-o", in.output, "base path; writes <base>.json and friends");
    c_generate->add_option("--format,-f", in.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kOk;
        }
        err << "error: " << e.what() << "\n";
        return kBadInput;
    }

    try {
        if (*c_generate) {
            const GeneratedExample ex = generate(gen_name);
            if (in.output.empty()) {
                Json bundle;
                bundle["complex"] = to_json(ex.complex);
                if (ex.labels) bundle["labels"] = to_json(*ex.labels);
                if (ex.coloring) bundle["coloring"] = to_json(*ex.coloring);
                if (ex.components) bundle["components"] = to_json(*ex.components);
                out << bundle.dump(2) << "\n";
            } else {
                write_text_file(in.output + ".json", to_json(ex.complex).dump(2) + "\n");
                out << "wrote " << in.output << ".json\n";
                if (ex.labels) {
                    write_text_file(in.output + ".labels.json", to_json(*ex.labels).dump(2) + "\n");
                    out << "wrote " << in.output << ".labels.json\n";
                }
                if (ex.coloring) {
                    write_text_file(in.output + ".coloring.json",
                                    to_json(*ex.coloring).dump(2) + "\n");
                    out << "wrote " << in.output << ".coloring.json\n";
                }
                if (ex.components) {
                    write_text_file(in.output + ".components.json",
                                    to_json(*ex.components).dump(2) + "\n");
                    out << "wrote " << in.output << ".components.json\n";
                }
            }
            return kOk;
        }

        if (*c_monodromy && !matrix_file.empty()) {
            const NamedMatrix nm = matrix_from_json(load_json_file(matrix_file));
            if (!nm.matrix.is_symmetric()) throw SchemaError("/matrix", "matrix is not symmetric");
            const Int det = exact_determinant(nm.matrix);
            const Signature sig = exact_signature(nm.matrix);
            Json jout;
            jout["matrix"] = to_json(nm.matrix);
            if (!nm.colors.empty()) jout["colors"] = nm.colors;
            jout["determinant"] = int_to_json(det);
            jout["rank"] = sig.rank();
            jout["signature"] =
                Json{{"positive", sig.positive}, {"negative", sig.negative}, {"zero", sig.zero}};
            std::ostringstream text;
            text << "determinant: " << det.str() << "\nrank: " << sig.rank() << "\nsignature: ("
                 << sig.positive << "," << sig.negative << "," << sig.zero << ")\n";
            emit(in, jout, text.str(), out);
            return kOk;
        }

        const Loaded l = load_inputs(in);

        if (*c_validate) {
            const ValidationReport rep = validate(l.complex);
            Json jout;
            jout["ok"] = rep.ok();
            Json list = Json::array();
            std::ostringstream text;
            for (const Violation& v : rep.violations) {
                list.push_back(Json{{"code", v.code}, {"message", v.message}});
                text << "[" << v.code << "] " << v.message << "\n";
            }
            jout["violations"] = std::move(list);
            text << (rep.ok() ? "valid\n" : "invalid\n");
            emit(in, jout, text.str(), out);
            return rep.ok() ? kOk : kChecksFailed;
        }

        if (*c_classify) {
            const SpaceType t = classify(l.complex);
            Json jout;
            jout["classification"] = to_string(t);
            jout["euler"] = euler_characteristic(l.complex);
            emit(in, jout, to_string(t) + "\n", out);
            return kOk;
        }

        if (*c_color) {
            if (l.coloring) {
                const bool okc = check_coloring(l.complex, *l.coloring);
                Json jout;
                jout["valid"] = okc;
                emit(in, jout, okc ? "valid coloring\n" : "invalid coloring\n", out);
                return okc ? kOk : kChecksFailed;
            }
            ColorabilityResult res = is_colorable(l.complex);
            if (res.colorable()) {
                const Json jout = to_json(*res.coloring);
                std::ostringstream text;
                text << "colorable with " << res.coloring->colors.size() << " canonical classes\n";
                emit(in, jout, text.str(), out);
                return kOk;
            }
            const ObstructionWitness& w = *res.obstruction;
            Json jout;
            jout["obstruction"] = Json{{"cell", w.cell},
                                       {"slot_a", Json{{"cell", w.a.cell}, {"factor", w.a.factor}}},
                                       {"slot_b", Json{{"cell", w.b.cell}, {"factor", w.b.factor}}}};
            Json trace = Json::array();
            std::ostringstream text;
            text << "not colorable: cell " << w.cell << " slots " << w.a.factor << " and "
                 << w.b.factor << " are forced equal\n";
            for (const FaceIncidence& inc : w.trace) {
                trace.push_back(Json{{"face", inc.face}, {"coface", inc.coface}});
                text << "  via " << inc.face << " < " << inc.coface << "\n";
            }
            jout["obstruction"]["trace"] = std::move(trace);
            emit(in, jout, text.str(), out);
            return kChecksFailed;
        }

        if (*c_analyze) {
            const AnalysisReport rep =
                build_analysis(l.complex, l.labels, l.coloring, l.components, l.period);
            emit(in, to_json(rep), to_text(rep, want_color(out)), out);
            return rep.ok() ? kOk : kChecksFailed;
        }

        if (*c_slabs) {
            std::string why;
            const std::optional<Coloring> col = pick_coloring(l.complex, l.coloring, why);
            if (!col) {
                err << "error: " << why << "\n";
                return kChecksFailed;
            }
            const SlabDecomposition dec = slabs(l.complex, *col, color_name);
            Json jout;
            jout["color"] = color_name;
            Json list = Json::array();
            std::ostringstream text;
            text << dec.slabs.size() << " slabs of color " << color_name << "\n";
            for (const Slab& s : dec.slabs) {
                list.push_back(s.vertices);
                text << " ";
                for (VertexId v : s.vertices) text << " " << v;
                text << "\n";
            }
            jout["slabs"] = std::move(list);
            emit(in, jout, text.str(), out);
            return kOk;
        }

        if (*c_params) {
            std::string why;
            const std::optional<Coloring> col = pick_coloring(l.complex, l.coloring, why);
            if (!col) {
                err << "error: " << why << "\n";
                return kChecksFailed;
            }
            const ParameterCount pc = parameter_count(l.complex, *col);
            Json jout;
            jout["structural"] = pc.structural;
            jout["closed_form"] = pc.closed_form;
            jout["match"] = pc.match;
            std::ostringstream text;
            text << "structural: " << pc.structural << "\n20-|S|:     " << pc.closed_form << "\n"
                 << (pc.match ? "match\n" : "MISMATCH\n");
            emit(in, jout, text.str(), out);
            return pc.match ? kOk : kChecksFailed;
        }

        if (*c_monodromy) {
            std::string why;
            const std::optional<Coloring> col = pick_coloring(l.complex, l.coloring, why);
            if (!col) {
                err << "error: " << why << "\n";
                return kChecksFailed;
            }
            const MonodromyGram g = gram_matrix(l.complex, *col);
            const Int det = exact_determinant(g.matrix);
            const Signature sig = exact_signature(g.matrix);
            Json jout;
            jout["colors"] = g.colors;
            jout["matrix"] = to_json(g.matrix);
            jout["determinant"] = int_to_json(det);
            jout["rank"] = sig.rank();
            jout["signature"] =
                Json{{"positive", sig.positive}, {"negative", sig.negative}, {"zero", sig.zero}};
            std::ostringstream text;
            text << "colors:";
            for (const std::string& c : g.colors) text << " " << c;
            text << "\n";
            for (std::size_t i = 0; i < g.matrix.rows(); ++i) {
                for (std::size_t j = 0; j < g.matrix.cols(); ++j) text << " " << g.matrix(i, j);
                text << "\n";
            }
            text << "determinant: " << det.str() << "\nrank: " << sig.rank() << "\nsignature: ("
                 << sig.positive << "," << sig.negative << "," << sig.zero << ")\n";
            emit(in, jout, text.str(), out);
            return kOk;
        }

        if (*c_lattice) {
            if (!l.labels || !l.components)
                throw SchemaError("", "lattice needs --labels and --components");
            std::string why;
            const std::optional<Coloring> col = pick_coloring(l.complex, l.coloring, why);
            if (!col) {
                err << "error: " << why << "\n";
                return kChecksFailed;
            }
            const CartierLattice lattice = numerically_cartier(l.complex, *l.labels, *l.components);
            Json jout;
            jout["rank"] = lattice.rank();
            jout["ambient_rank"] = lattice.ambient_rank();
            jout["saturated"] = lattice.is_saturated();
            std::ostringstream text;
            text << "rank: " << lattice.rank() << " (ambient " << lattice.ambient_rank() << ")\n";
            bool all_pass = true;
            if (l.period) {
                std::vector<SlabClass> classes;
                Json verdicts = Json::array();
                for (int s = 0; s < static_cast<int>(col->colors.size()); ++s) {
                    const SlabDecomposition dec = slabs(l.complex, *col, s);
                    for (std::size_t i = 0; i < dec.slabs.size(); ++i)
                        classes.push_back(
                            slab_class(l.complex, *col, *l.components, lattice, dec.slabs[i]));
                }
                const std::vector<bool> pass = check_d_semistable(lattice, *l.period, classes);
                std::size_t idx = 0;
                for (int s = 0; s < static_cast<int>(col->colors.size()); ++s) {
                    const SlabDecomposition dec = slabs(l.complex, *col, s);
                    for (std::size_t i = 0; i < dec.slabs.size(); ++i, ++idx) {
                        verdicts.push_back(Json{{"color", col->colors[static_cast<std::size_t>(s)]},
                                                {"slab", i},
                                                {"trivial", static_cast<bool>(pass[idx])}});
                        text << "slab " << col->colors[static_cast<std::size_t>(s)] << "#" << i
                             << ": phi(xi)" << (pass[idx] ? "=1" : "!=1") << "\n";
                        all_pass = all_pass && pass[idx];
                    }
                }
                jout["d_semistable"] = std::move(verdicts);
                text << (all_pass ? "d-semistable\n" : "not d-semistable\n");
            }
            emit(in, jout, text.str(), out);
            return all_pass ? kOk : kChecksFailed;
        }

        if (*c_resolve) {
            if (!l.labels) throw SchemaError("", "resolve needs --labels");
            PolysimplicialComplex cx = l.complex;
            EdgeLabeling lab = *l.labels;
            if (resolve_all) {
                ResolutionResult res = snc_resolution(cx, lab);
                cx = std::move(res.complex);
                lab = std::move(res.labels);
            } else {
                if (square_id < 0 || diag_spec.empty())
                    throw SchemaError("", "resolve needs --all or --square with --diag");
                const std::size_t comma = diag_spec.find(',');
                if (comma == std::string::npos)
                    throw SchemaError("", "--diag expects two vertex ids a,c");
                const VertexId a = std::stoll(diag_spec.substr(0, comma));
                const VertexId c = std::stoll(diag_spec.substr(comma + 1));
                SubdivisionResult res = subdivide_square(cx, lab, square_id, {a, c});
                cx = std::move(res.complex);
                lab = std::move(res.labels);
            }
            if (in.output.empty()) {
                Json bundle;
                bundle["complex"] = to_json(cx);
                bundle["labels"] = to_json(lab);
                out << bundle.dump(2) << "\n";
            } else {
                write_text_file(in.output + ".json", to_json(cx).dump(2) + "\n");
                write_text_file(in.output + ".labels.json", to_json(lab).dump(2) + "\n");
                out << "wrote " << in.output << ".json and " << in.output << ".labels.json\n";
            }
            return kOk;
        }
    } catch (const SchemaError& e) {
        err << "input error: " << e.what() << "\n";
        return kBadInput;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const InternalCheckError& e) {
        err << "internal error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    }
    err << "error: no subcommand\n";
    return kBadInput;
}

}  // namespace cli
}  // namespace polync
