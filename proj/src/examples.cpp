#include "fdrm/examples.hpp"

#include "fdrm/constructions.hpp"

namespace fdrm {

namespace {

MatFq coeff_matrix(const FieldCtx* cx, std::size_t r, std::size_t c,
                   std::initializer_list<u32> vals) {
    MatFq m(cx, r, c);
    std::size_t t = 0;
    for (u32 v : vals) m.a[t++] = v;
    return m;
}

RankCode build_sys_mrd(u64 q, std::size_t n, std::size_t delta, u64 m,
                       std::initializer_list<u32> coeffs, const FerrersDiagram& f) {
    auto ctx = make_field_q(q, m);
    SysMrdSpec spec;
    spec.n = n;
    spec.delta = delta;
    spec.a = coeff_matrix(ctx.get(), n - delta + 1, delta - 1, coeffs);
    return construct_from_sys_mrd(sys_mrd_build(ctx, spec), spec, f);
}

RankCode build_com1() {
    auto f = parse_diagram("cols:2,3,3,4,4,4,4,10");
    auto f1 = parse_diagram("cols:2,3,3");
    auto f12 = parse_diagram("cols:3,3,3");
    auto f3 = parse_diagram("cols:3");
    auto f4 = parse_diagram("cols:3,4,4,4,7");
    std::vector<ComPiece> pieces(2);
    pieces[0].shape = f1;
    for (auto cell : f1.cells()) {
        pieces[0].into_whole.pairs.push_back({cell, cell});
        pieces[0].into_combined.pairs.push_back({cell, cell});
    }
    pieces[1].shape = parse_diagram("cols:1");
    pieces[1].into_whole.pairs.push_back({{0, 0}, {3, 3}});
    pieces[1].into_combined.pairs.push_back({{0, 0}, {2, 0}});
    CellMap phi3;
    for (std::size_t i = 0; i < 3; ++i) phi3.pairs.push_back({{i, 0}, {7 + i, 7}});
    CellMap phi4 = CellMap::translate(f4, 0, 3);
    auto c12 = shorten_to_diagram(f12, 3, 2);
    auto c3 = shorten_to_diagram(f3, 1, 2);
    auto c4 = construct_gab_subcode(f4, 4, 1, 2);
    return combine_com1(f, pieces, f12, c12, f3, phi3, c3, f4, phi4, c4);
}

RankCode build_com2() {
    auto f = parse_diagram("cols:3,3,3,3,3,4,4,4,4,12");
    auto f1 = parse_diagram("cols:3,3,3,3,3");
    auto f123 = parse_diagram("cols:4,4,4,4,5");
    auto f3 = parse_diagram("cols:5");
    auto f4 = parse_diagram("cols:3,4,4,4,7");
    std::vector<ComPiece> pieces(3);
    pieces[0].shape = f1;
    for (auto cell : f1.cells()) {
        pieces[0].into_whole.pairs.push_back({cell, cell});
        pieces[0].into_combined.pairs.push_back({cell, cell});
    }
    pieces[1].shape = parse_diagram("cols:1");
    pieces[1].into_whole.pairs.push_back({{0, 0}, {3, 5}});
    pieces[1].into_combined.pairs.push_back({{0, 0}, {4, 4}});
    pieces[2].shape = f3;
    for (std::size_t i = 0; i < 5; ++i) {
        pieces[2].into_whole.pairs.push_back({{i, 0}, {7 + i, 9}});
        pieces[2].into_combined.pairs.push_back({{i, 0}, {3, i}});
    }
    CellMap phi4 = CellMap::translate(f4, 0, 5);
    auto c123 = shorten_to_diagram(f123, 4, 2);
    auto c4 = construct_gab_subcode(f4, 4, 1, 2);
    return combine_com2(f, pieces, f123, c123, f4, phi4, c4);
}

std::vector<ExampleSpec> make_registry() {
    std::vector<ExampleSpec> reg;
    {
        ExampleSpec ex;
        ex.id = "sysmds1";
        ex.summary = "systematic MRD subcode, q=2, n=4: [cols:2,3,4,6, 5, 3]";
        ex.q = 2;
        ex.delta = 3;
        ex.expected_k = 5;
        ex.diagram = parse_diagram("cols:2,3,4,6");
        ex.build = [f = ex.diagram] { return build_sys_mrd(2, 4, 3, 6, {1, 1, 1, 1}, f); };
        reg.push_back(std::move(ex));
    }
    {
        ExampleSpec ex;
        ex.id = "sysmds2";
        ex.summary = "systematic MRD subcode, q=5, n=7: [cols:3,4,5,6,7,8,10, 12, 5]";
        ex.q = 5;
        ex.delta = 5;
        ex.expected_k = 12;
        ex.expect_exhaustive = false;  // 5^12 codewords
        ex.diagram = parse_diagram("cols:3,4,5,6,7,8,10");
        ex.build = [f = ex.diagram] {
            return build_sys_mrd(5, 7, 5, 14, {2, 3, 4, 1, 1, 1, 1, 1, 1, 2, 4, 3}, f);
        };
        reg.push_back(std::move(ex));
    }
    {
        ExampleSpec ex;
        ex.id = "sysmds3";
        ex.summary = "systematic MRD subcode, q=7, n=9: [cols:2,...,9,11, 9, 7]";
        ex.q = 7;
        ex.delta = 7;
        ex.expected_k = 9;
        ex.expect_exhaustive = false;  // 7^9 codewords
        ex.diagram = parse_diagram("cols:2,3,4,5,6,7,8,9,11");
        ex.build = [f = ex.diagram] {
            return build_sys_mrd(7, 9, 7, 20,
                                 {2, 3, 4, 5, 6, 1, 1, 1, 1, 1, 1, 1, 1, 6, 3, 5, 2, 4}, f);
        };
        reg.push_back(std::move(ex));
    }
    {
        ExampleSpec ex;
        ex.id = "gabsub-n3";
        ex.summary = "staircase subcode, two-step: [cols:2,2,4,4,6,8, 8, 4]";
        ex.q = 2;
        ex.delta = 4;
        ex.expected_k = 8;
        ex.diagram = parse_diagram("cols:2,2,4,4,6,8");
        ex.build = [f = ex.diagram] { return optimal_gab_subcode(f, 4, 2); };
        reg.push_back(std::move(ex));
    }
    {
        ExampleSpec ex;
        ex.id = "com1";
        ex.summary = "paired-edge region combination: [cols:2,3,3,4,4,4,4,10, 10, 4]";
        ex.q = 2;
        ex.delta = 4;
        ex.expected_k = 10;
        ex.diagram = parse_diagram("cols:2,3,3,4,4,4,4,10");
        ex.build = build_com1;
        reg.push_back(std::move(ex));
    }
    {
        ExampleSpec ex;
        ex.id = "com2";
        ex.summary = "merged three-piece region combination: [cols:3,3,3,3,3,4,4,4,4,12, 13, 4]";
        ex.q = 2;
        ex.delta = 4;
        ex.expected_k = 13;
        ex.diagram = parse_diagram("cols:3,3,3,3,3,4,4,4,4,12");
        ex.build = build_com2;
        reg.push_back(std::move(ex));
    }
    {
        ExampleSpec ex;
        ex.id = "com3";
        ex.summary = "split diagram with one pivotal dot: [cols:2,2,2,3,6, 5, 3]";
        ex.q = 2;
        ex.delta = 3;
        ex.expected_k = 5;
        ex.diagram = parse_diagram("cols:2,2,2,3,6");
        ex.build = [f = ex.diagram] { return recipe_thm_com3(f, 3, 2); };
        reg.push_back(std::move(ex));
    }
    {
        ExampleSpec ex;
        ex.id = "diag-ex";
        ex.summary = "diagonal MDS filling: [cols:2,3,4,5, 5, 3] over F_4";
        ex.q = 4;
        ex.delta = 3;
        ex.expected_k = 5;
        ex.diagram = parse_diagram("cols:2,3,4,5");
        ex.build = [f = ex.diagram] { return mds_diagonal_construct(f, 3, 4); };
        reg.push_back(std::move(ex));
    }
    return reg;
}

}  // namespace

const std::vector<ExampleSpec>& example_registry() {
    static const std::vector<ExampleSpec> reg = make_registry();
    return reg;
}

const ExampleSpec* find_example(const std::string& id) {
    for (const auto& ex : example_registry())
        if (ex.id == id) return &ex;
    return nullptr;
}

}  // namespace fdrm
