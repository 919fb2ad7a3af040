#include "blockstein/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace blockstein {

using json = nlohmann::ordered_json;

void Config::validate() const {
    if (p < 2) throw UsageError("p must be a prime >= 2");
    if (max_degree < 0) throw UsageError("max_degree must be >= 0");
    if (budget < 1) throw UsageError("budget must be positive");
}

Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    Config cfg;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        if (key == "p")
            cfg.p = std::stoi(val);
        else if (key == "m")
            cfg.m = std::stoi(val);
        else if (key == "max_degree")
            cfg.max_degree = std::stoi(val);
        else if (key == "budget")
            cfg.budget = std::stol(val);
        else if (key == "seed")
            cfg.seed = std::stoull(val);
        else if (key == "cache_dir")
            cfg.cache_dir = val;
        else
            throw UsageError("unknown config key: " + key);
    }
    return cfg;
}

void apply_env(Config& cfg) {
    if (const char* dir = std::getenv("BLOCKSTEIN_CACHE")) cfg.cache_dir = dir;
}

GroupPtr load_group(const std::string& spec, int order_cap) {
    if (std::filesystem::exists(spec)) {
        std::ifstream in(spec);
        json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            throw UsageError("bad group JSON: " + std::string(e.what()));
        }
        if (!j.contains("order") || !j.contains("table")) throw UsageError("group JSON needs order and table");
        int n = j["order"].get<int>();
        auto table = j["table"].get<std::vector<std::vector<int>>>();
        return from_mult_table(n, table, order_cap);
    }
    return from_catalog(spec, order_cap);
}

namespace {

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string cache_key(const std::string& command, const GroupTable& G, const Config& cfg, int deg,
                      const std::string& extra) {
    std::ostringstream os;
    os << command << '|' << G.n << '|';
    for (int v : G.mult) os << v << ',';
    os << '|' << cfg.p << '|' << cfg.m << '|' << deg << '|' << cfg.budget << '|' << cfg.max_degree
       << '|' << extra;
    std::ostringstream hex;
    hex << std::hex << fnv1a(os.str());
    return hex.str();
}

// run with a cache memo: presence or absence of the cache never changes bytes
CmdResult with_cache(const Config& cfg, const std::string& key, const std::function<CmdResult()>& f) {
    if (cfg.cache_dir.empty()) return f();
    std::filesystem::path dir(cfg.cache_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::filesystem::path file = dir / (key + ".json");
    if (std::filesystem::exists(file)) {
        std::ifstream in(file);
        std::ostringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();
        int code = text.find("\"status\": \"verification_failed\"") != std::string::npos ? 1 : 0;
        return {code, text};
    }
    CmdResult r = f();
    if (r.exit_code == 0 || r.exit_code == 1) {
        std::ofstream out(file);
        out << r.report;
    }
    return r;
}

json inputs_json(const std::string& group, const GroupTable& G, const FieldSpec& F, const Config& cfg,
                 int deg) {
    json j;
    j["group"] = group;
    j["order"] = G.n;
    j["p"] = F.p;
    j["m"] = F.m;
    j["deg"] = deg;
    j["budget"] = cfg.budget;
    j["max_degree"] = cfg.max_degree;
    return j;
}

json matrix_json(const Matrix& M) {
    json rows = json::array();
    for (int r = 0; r < M.rows; ++r) {
        json row = json::array();
        for (int c = 0; c < M.cols; ++c) row.push_back(M.at(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

struct CheckList {
    json checks = json::array();
    bool all_pass = true;

    void add(const std::string& name, bool pass, const std::string& witness = "") {
        json c;
        c["name"] = name;
        c["pass"] = pass;
        if (!pass && !witness.empty()) c["witness"] = witness;
        checks.push_back(std::move(c));
        all_pass = all_pass && pass;
    }
};

CmdResult finish(json& rep, const CheckList& cl) {
    rep["checks"] = cl.checks;
    rep["status"] = cl.all_pass ? "ok" : "verification_failed";
    return {cl.all_pass ? 0 : 1, rep.dump(2) + "\n"};
}

Cochain nth_basis_rep(Tower& tw, const SubKey& H, int deg, int idx) {
    CocycleClass c;
    c.sub = H;
    c.deg = deg;
    c.coords.assign(tw.space(H, deg).dim, 0);
    c.coords[idx] = 1;
    return tw.rep_of(c);
}

}  // namespace

CmdResult cmd_cohomology(const std::string& group, const Config& cfg, int deg, bool bases) {
    GroupPtr G = load_group(group);
    cfg.validate();
    int m = cfg.m > 0 ? cfg.m : splitting_degree(*G, cfg.p);
    FieldSpec F(cfg.p, m);
    auto key = cache_key("cohomology", *G, cfg, deg, bases ? "bases" : "");
    return with_cache(cfg, key, [&]() -> CmdResult {
        Tower tw = make_trivial_tower(G, F, cfg.budget, cfg.max_degree);
        SubKey W = tw.whole();
        json rep;
        rep["schema"] = "blockstein/1";
        rep["command"] = "cohomology";
        rep["inputs"] = inputs_json(group, *G, F, cfg, deg);
        json dims = json::array();
        for (int n = 0; n <= deg; ++n) dims.push_back(tw.space(W, n).dim);
        rep["results"]["dims"] = dims;
        json betas = json::array();
        for (int n = 0; n < deg; ++n) {
            int dn = tw.space(W, n).dim, dn1 = tw.space(W, n + 1).dim;
            Matrix B(dn1, dn, F);
            for (int c = 0; c < dn; ++c) {
                auto b = tw.bockstein_trivial(nth_basis_rep(tw, W, n, c));
                auto cls = tw.class_of(W, b);
                for (int r = 0; r < dn1; ++r) B.at(r, c) = cls.coords[r];
            }
            betas.push_back(matrix_json(B));
        }
        rep["results"]["bockstein_matrices"] = betas;
        if (bases) {
            json bs = json::array();
            for (int n = 0; n <= deg; ++n) {
                json per = json::array();
                for (const auto& b : tw.space(W, n).basis) per.push_back(b);
                bs.push_back(std::move(per));
            }
            rep["results"]["bases"] = bs;
        }
        CheckList cl;
        return finish(rep, cl);
    });
}

CmdResult cmd_hochschild(const std::string& group, const Config& cfg, int deg, bool verify) {
    GroupPtr G = load_group(group);
    cfg.validate();
    int m = cfg.m > 0 ? cfg.m : splitting_degree(*G, cfg.p);
    FieldSpec F(cfg.p, m);
    auto key = cache_key("hochschild", *G, cfg, deg, verify ? "verify" : "");
    return with_cache(cfg, key, [&]() -> CmdResult {
        Hochschild hh(G, F, cfg.budget, cfg.max_degree);
        Tower& kg = hh.kg();
        Tower& triv = hh.triv();
        SubKey W = kg.whole();
        json rep;
        rep["schema"] = "blockstein/1";
        rep["command"] = "hochschild";
        rep["inputs"] = inputs_json(group, *G, F, cfg, deg);
        json table = json::array();
        for (int i = 0; i < hh.class_count(); ++i) {
            json row;
            row["class_rep"] = G->label(hh.class_rep(i));
            row["centralizer_order"] = hh.centralizer_of(i).order();
            json dims = json::array();
            for (int n = 0; n <= deg; ++n)
                dims.push_back(triv.space(hh.centralizer_of(i).elems, n).dim);
            row["dims"] = dims;
            table.push_back(std::move(row));
        }
        rep["results"]["centralizers"] = table;
        json hhdims = json::array();
        for (int n = 0; n <= deg; ++n) hhdims.push_back(kg.space(W, n).dim);
        rep["results"]["hochschild_dims"] = hhdims;
        CheckList cl;
        if (verify) {
            for (int n = 0; n <= deg; ++n) {
                bool ok = true;
                std::string wit;
                try {
                    hh.decompose(n);
                } catch (const std::exception& e) {
                    ok = false;
                    wit = e.what();
                }
                cl.add("additive_decomposition_deg" + std::to_string(n), ok, wit);
            }
            // roundtrip on a basis
            bool rt = true;
            for (int n = 0; n <= std::min(deg, 2) && rt; ++n) {
                int dn = kg.space(W, n).dim;
                for (int c = 0; c < dn && rt; ++c) {
                    Cochain a = nth_basis_rep(kg, W, n, c);
                    Cochain back = kg.zero_cochain(W, n);
                    for (int i = 0; i < hh.class_count(); ++i)
                        back = kg.add(back, hh.gamma(i, hh.component(a, i)));
                    rt = kg.cohomologous(W, back, a);
                }
            }
            cl.add("gamma_roundtrip", rt);
            // product formula vs direct cup, total degree <= 2
            bool pf = true;
            for (int i = 0; i < hh.class_count() && pf; ++i)
                for (int j = 0; j < hh.class_count() && pf; ++j)
                    for (int di = 0; di <= 1 && pf; ++di)
                        for (int dj = 0; di + dj <= 2 && dj <= deg && pf; ++dj) {
                            if (di > deg || di + dj > deg) continue;
                            const auto& si = triv.space(hh.centralizer_of(i).elems, di);
                            const auto& sj = triv.space(hh.centralizer_of(j).elems, dj);
                            if (si.dim == 0 || sj.dim == 0) continue;
                            Cochain fi = nth_basis_rep(triv, hh.centralizer_of(i).elems, di, 0);
                            Cochain fj = nth_basis_rep(triv, hh.centralizer_of(j).elems, dj, 0);
                            pf = kg.cohomologous(W, hh.product_formula(i, fi, j, fj),
                                                 kg.cup(hh.gamma(i, fi), hh.gamma(j, fj)));
                        }
            cl.add("product_formula", pf);
            // Bockstein: connecting route vs decomposition route, squares to zero
            bool bock = true, sq = true;
            for (int r = 0; r <= std::min(deg, 2) && bock; ++r) {
                int dn = kg.space(W, r).dim;
                for (int c = 0; c < dn && bock; ++c) {
                    Cochain a = nth_basis_rep(kg, W, r, c);
                    Cochain b1 = hh.bockstein(a);
                    bock = kg.cohomologous(W, b1, kg.bockstein_connecting(a));
                    if (r + 2 <= cfg.max_degree + 1)
                        sq = sq && kg.is_coboundary(W, hh.bockstein(b1));
                }
            }
            cl.add("bockstein_connecting_agrees", bock);
            cl.add("bockstein_squares_to_zero", sq);
        }
        return finish(rep, cl);
    });
}

CmdResult cmd_blocks(const std::string& group, const Config& cfg, int deg, int block_index,
                     bool verify) {
    GroupPtr G = load_group(group);
    cfg.validate();
    auto key = cache_key("blocks", *G, cfg, deg,
                         std::to_string(block_index) + (verify ? "|verify" : ""));
    return with_cache(cfg, key, [&]() -> CmdResult {
        BlocksEngine eng(G, cfg.p, cfg.m, cfg.budget, cfg.max_degree);
        auto& bs = eng.blocks();
        if (block_index >= int(bs.size()))
            throw UsageError("block index out of range: " + std::to_string(block_index));
        json rep;
        rep["schema"] = "blockstein/1";
        rep["command"] = "blocks";
        rep["inputs"] = inputs_json(group, *G, eng.field(), cfg, deg);
        rep["inputs"]["block"] = block_index;
        CheckList cl;
        json blocks = json::array();
        for (auto& b : bs) {
            if (block_index >= 0 && b.index != block_index) continue;
            eng.compute_brauer_pairs(b);
            json jb;
            jb["index"] = b.index;
            jb["dim"] = b.module->dim;
            jb["principal"] = b.principal;
            jb["idempotent"] = b.idempotent;
            jb["defect_order"] = b.defect.order();
            jb["defect_elements"] = b.defect.elems;
            json pairs = json::array();
            for (auto& bp : b.pairs) {
                json jp;
                jp["Q_order"] = bp.Q.order();
                jp["Q"] = bp.Q.elems;
                jp["stabilizer_order"] = bp.stabilizer.order();
                pairs.push_back(std::move(jp));
            }
            jb["brauer_pairs"] = pairs;
            json stdims = json::array();
            for (int n = 0; n <= deg; ++n) stdims.push_back(eng.block_cohomology(b, n).cols);
            jb["block_cohomology_dims"] = stdims;
            json hhdims = json::array();
            Tower& TB = eng.block_tower(b.index);
            for (int n = 0; n <= deg; ++n) hhdims.push_back(TB.space(TB.whole(), n).dim);
            jb["hochschild_dims"] = hhdims;
            blocks.push_back(std::move(jb));
            if (verify) {
                std::string tag = "block" + std::to_string(b.index) + "_";
                bool phi_ok = true;
                std::string wit;
                try {
                    for (int n = 0; n <= std::min(deg, 2); ++n) eng.hh_block_decompose(b.index, n);
                } catch (const std::exception& e) {
                    phi_ok = false;
                    wit = e.what();
                }
                cl.add(tag + "phi_iso", phi_ok, wit);
                bool routes = true;
                for (int r = 0; r <= std::min(deg, 2) && routes; ++r) {
                    int dn = TB.space(TB.whole(), r).dim;
                    for (int c = 0; c < dn && routes; ++c) {
                        Cochain a = nth_basis_rep(TB, TB.whole(), r, c);
                        routes = TB.cohomologous(TB.whole(), eng.hh_block_bockstein(b.index, a),
                                                 eng.hh_block_bockstein_transported(b.index, a));
                    }
                }
                cl.add(tag + "bockstein_routes_agree", routes);
                bool stable_ok = true;
                for (int r = 0; r + 1 <= std::min(deg, cfg.max_degree - 1) && stable_ok; ++r) {
                    const Matrix& st = eng.block_cohomology(b, r);
                    for (int c = 0; c < st.cols && stable_ok; ++c) {
                        std::vector<int> coords(st.cols, 0);
                        coords[c] = 1;
                        try {
                            eng.block_cohomology_bockstein(b, r, coords);
                        } catch (const std::exception&) {
                            stable_ok = false;
                        }
                    }
                }
                cl.add(tag + "beta_preserves_stability", stable_ok);
            }
        }
        rep["results"]["block_count"] = int(bs.size());
        rep["results"]["blocks"] = blocks;
        return finish(rep, cl);
    });
}

CmdResult cmd_source(const std::string& group, const Config& cfg, int deg, int block_index,
                     bool verify) {
    GroupPtr G = load_group(group);
    cfg.validate();
    auto key = cache_key("source", *G, cfg, deg,
                         std::to_string(block_index) + (verify ? "|verify" : ""));
    return with_cache(cfg, key, [&]() -> CmdResult {
        BlocksEngine eng(G, cfg.p, cfg.m, cfg.budget, cfg.max_degree);
        auto& bs = eng.blocks();
        int idx = block_index;
        if (idx < 0) {
            for (auto& b : bs)
                if (b.principal) idx = b.index;
        }
        if (idx < 0 || idx >= int(bs.size()))
            throw UsageError("block index out of range: " + std::to_string(block_index));
        SourceEngine src(eng, idx, cfg.seed);
        Tower& A = src.a_tower();
        Tower& K = src.p_triv();
        SubKey W = A.whole();
        json rep;
        rep["schema"] = "blockstein/1";
        rep["command"] = "source";
        rep["inputs"] = inputs_json(group, *G, eng.field(), cfg, deg);
        rep["inputs"]["block"] = idx;
        json res;
        res["defect_order"] = src.defect().order();
        res["source_algebra_dim"] = src.dim_a();
        res["source_idempotent"] = src.source_idempotent();
        json yj = json::array();
        for (size_t xi = 0; xi < src.Y().size(); ++xi) {
            json row;
            row["x"] = G->label(src.Y()[xi]);
            row["coset_size"] = int(src.coset_elements(int(xi)).size());
            row["mackey_labels"] = int(src.qx_reps()[xi].size());
            yj.push_back(std::move(row));
        }
        res["Y"] = yj;
        json labels = json::array();
        for (int i = 0; i < src.label_count(); ++i) {
            json row;
            row["x_index"] = src.label(i).x_idx;
            row["u"] = src.label(i).u;
            row["v"] = src.label(i).v;
            row["Q_order"] = int(src.label(i).C.size());
            json dims = json::array();
            for (int n = 0; n <= deg; ++n) dims.push_back(K.space(src.label(i).C, n).dim);
            row["dims"] = dims;
            labels.push_back(std::move(row));
        }
        res["labels"] = labels;
        json adims = json::array();
        for (int n = 0; n <= deg; ++n) adims.push_back(A.space(W, n).dim);
        res["source_cohomology_dims"] = adims;
        rep["results"] = res;
        CheckList cl;
        if (verify) {
            for (int n = 0; n <= deg; ++n) {
                bool ok = true;
                std::string wit;
                try {
                    src.decompose(n);
                } catch (const std::exception& e) {
                    ok = false;
                    wit = e.what();
                }
                cl.add("source_decomposition_deg" + std::to_string(n), ok, wit);
            }
            bool pf = true;
            for (int i = 0; i < src.label_count() && pf; ++i)
                for (int j = 0; j < src.label_count() && pf; ++j)
                    for (int di = 0; di <= 1 && pf; ++di)
                        for (int dj = 0; di + dj <= std::min(deg, 2) && pf; ++dj) {
                            if (di > deg) continue;
                            if (K.space(src.label(i).C, di).dim == 0) continue;
                            if (K.space(src.label(j).C, dj).dim == 0) continue;
                            Cochain f = nth_basis_rep(K, src.label(i).C, di, 0);
                            Cochain g = nth_basis_rep(K, src.label(j).C, dj, 0);
                            pf = A.cohomologous(W, src.product_formula(i, f, j, g),
                                                A.cup(src.gamma(i, f), src.gamma(j, g)));
                        }
            cl.add("source_product_formula", pf);
            bool sq = true;
            for (int r = 1; r <= std::min(deg, 2) && sq; ++r) {
                int dn = A.space(W, r).dim;
                for (int c = 0; c < dn && sq; ++c) {
                    Cochain a = nth_basis_rep(A, W, r, c);
                    sq = A.is_coboundary(W, src.bockstein(src.bockstein(a)));
                }
            }
            cl.add("source_bockstein_squares_to_zero", sq);
        }
        return finish(rep, cl);
    });
}

int run_cli(const std::vector<std::string>& args, std::ostream& out) {
    CLI::App app{"exact Bockstein computations on Hochschild cohomology of group and block algebras"};
    app.require_subcommand(1);

    std::string group, config_path, cache_dir;
    int deg = 2, p = 2, m = 0, block_index = -1, max_degree = 3;
    long budget = 200000;
    uint64_t seed = 0;
    bool verify = false, bases = false;

    auto add_common = [&](CLI::App* sub, bool with_block) {
        sub->add_option("--group", group, "catalog name or JSON file")->required();
        sub->add_option("--p", p, "characteristic")->required();
        sub->add_option("--m", m, "field extension degree (0 = auto)");
        sub->add_option("--deg", deg, "maximal degree to report");
        sub->add_option("--budget", budget, "matrix column budget");
        sub->add_option("--max-degree", max_degree, "cohomology degree cap");
        sub->add_option("--seed", seed, "seed for randomized search fallbacks");
        sub->add_option("--config", config_path, "INI config file");
        sub->add_option("--cache", cache_dir, "cache directory");
        if (with_block) sub->add_option("--block", block_index, "block index");
    };
    CLI::App* c_coh = app.add_subcommand("cohomology", "group cohomology dims and Bockstein matrices");
    add_common(c_coh, false);
    c_coh->add_flag("--bases", bases, "include basis cocycles in the report");
    CLI::App* c_hh = app.add_subcommand("hochschild", "additive decomposition of H^*(G,kG)");
    add_common(c_hh, false);
    c_hh->add_flag("--verify", verify, "run the verification suite");
    CLI::App* c_bl = app.add_subcommand("blocks", "blocks, defect groups, Brauer pairs");
    add_common(c_bl, true);
    c_bl->add_flag("--verify", verify, "run the verification suite");
    CLI::App* c_src = app.add_subcommand("source", "source-algebra cohomology");
    add_common(c_src, true);
    c_src->add_flag("--verify", verify, "run the verification suite");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        out << "usage error: " << e.what() << "\n";
        return 2;
    }
    try {
        Config cfg;
        if (!config_path.empty()) cfg = load_config_file(config_path);
        CLI::App* sub = app.get_subcommands().front();
        // explicit flags override the config file
        cfg.p = p;
        if (sub->count("--m")) cfg.m = m;
        if (sub->count("--budget")) cfg.budget = budget;
        if (sub->count("--max-degree")) cfg.max_degree = max_degree;
        if (sub->count("--seed")) cfg.seed = seed;
        apply_env(cfg);
        if (!cache_dir.empty()) cfg.cache_dir = cache_dir;
        CmdResult r;
        if (app.got_subcommand(c_coh))
            r = cmd_cohomology(group, cfg, deg, bases);
        else if (app.got_subcommand(c_hh))
            r = cmd_hochschild(group, cfg, deg, verify);
        else if (app.got_subcommand(c_bl))
            r = cmd_blocks(group, cfg, deg, block_index, verify);
        else
            r = cmd_source(group, cfg, deg, block_index, verify);
        out << r.report;
        return r.exit_code;
    } catch (const UsageError& e) {
        out << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        out << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const UnsupportedError& e) {
        out << "unsupported: " << e.what() << "\n";
        return 2;
    } catch (const SplittingError& e) {
        out << "field error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        out << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace blockstein
