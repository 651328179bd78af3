#include "mixedpowers/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "mixedpowers/errors.hpp"

namespace mixedpowers {

using bmp::abs;

namespace {

// 15-point Kronrod extension of 7-point Gauss-Legendre, positive half.
// Nodes/weights to 52 digits from the exact Stieltjes polynomial
//   E8 = x^8 - (36/17) x^6 + (7794/5491) x^4 - (202548/653429) x^2
//        + 52932681/4854324041,
// so the tables stay exact at any runtime precision (parsed per precision,
// not recomputed at startup).
struct NodeSet {
    std::vector<Real> kx, kw;  // 8 kronrod abscissae (incl. 0) + weights
    std::vector<Real> gw;      // 4 gauss weights matching kx[0], kx[2], kx[4], kx[6]
};

const char* const kKronrodNodes[8][2] = {
    {"0", "0.2094821410847278280129991748917142636977620802237043"},
    {"0.2077849550078984676006894037732449134797844071451706",
     "0.2044329400752988924141619992346490847165176041807184"},
    {"0.4058451513773971669066064120769614633473820140993701",
     "0.1903505780647854099132564024210136828260780754553584"},
    {"0.5860872354676911302941448382587295984367807506043610",
     "0.1690047266392679028265834265985502841062449003029442"},
    {"0.7415311855993944398638647732807884070741476471413903",
     "0.1406532597155259187451895905102379203998897572479986"},
    {"0.8648644233597690727897127886409262012109723070740881",
     "0.1047900103222501838398763225415180174437566542138306"},
    {"0.9491079123427585245261896840478512624007709376706178",
     "0.0630920926299785532907006631892042866650711572115507"},
    {"0.9914553711208126392068546975263285166420443383703347",
     "0.0229353220105292249637320080589695919935608112757470"}};

const char* const kGaussWeights[4] = {
    "0.4179591836734693877551020408163265306122448979591837",
    "0.3818300505051189449503697754889751338783650835338627",
    "0.2797053914892766679014677714237795824869250652265988",
    "0.1294849661688696932706114326790820183285874022599467"};

const NodeSet& nodes() {
    static std::mutex mu;
    static std::map<unsigned, NodeSet> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.try_emplace(Real::default_precision());
    if (inserted) {
        NodeSet& ns = it->second;
        for (const auto& row : kKronrodNodes) {
            ns.kx.emplace_back(row[0]);
            ns.kw.emplace_back(row[1]);
        }
        for (const char* w : kGaussWeights) ns.gw.emplace_back(w);
    }
    return it->second;
}

struct Panel {
    Real a, b;
    Cplx value;
    Real error;
    size_t order;  // creation order, for a deterministic tie-break
};

}  // namespace

void gk15_panel(const std::function<Cplx(const Real&)>& f, const Real& a, const Real& b,
                Cplx& gauss7, Cplx& kronrod15) {
    const NodeSet& ns = nodes();
    Real half = (b - a) / 2, mid = (a + b) / 2;
    Cplx gauss, kronrod;
    for (size_t i = 0; i < 8; ++i) {
        Cplx pair_sum = i == 0 ? f(mid) : f(mid + half * ns.kx[i]) + f(mid - half * ns.kx[i]);
        kronrod += ns.kw[i] * pair_sum;
        if (i % 2 == 0) gauss += ns.gw[i / 2] * pair_sum;
    }
    gauss7 = half * gauss;
    kronrod15 = half * kronrod;
}

QuadratureResult integrate_adaptive(const std::function<Cplx(const Real&)>& f, const Real& a,
                                    const Real& b, const QuadratureOptions& opt) {
    std::vector<Panel> panels;
    size_t order = 0;
    long evals = 0;
    auto push = [&](const Real& lo, const Real& hi) {
        Cplx g, k;
        gk15_panel(f, lo, hi, g, k);
        evals += 15;
        panels.push_back({lo, hi, k, cabs(k - g), order++});
    };
    Real width = (b - a) / opt.initial_panels;
    for (int i = 0; i < opt.initial_panels; ++i)
        push(a + width * i, i + 1 == opt.initial_panels ? b : a + width * (i + 1));

    for (;;) {
        Cplx total;
        Real err_total = 0;
        for (const Panel& p : panels) {
            total += p.value;
            err_total += p.error;
        }
        Real target = opt.tol * (cabs(total) + abs(b - a));
        if (err_total <= target) break;
        if (panels.size() >= static_cast<size_t>(opt.max_panels))
            throw ConvergenceError("integrate_adaptive: error " + real_str(err_total, 6) +
                                   " above tolerance after " + std::to_string(panels.size()) +
                                   " panels");
        // split the worst panel; ties broken by creation order so runs with
        // identical precision are bit-identical
        size_t worst = 0;
        for (size_t i = 1; i < panels.size(); ++i) {
            if (panels[i].error > panels[worst].error ||
                (panels[i].error == panels[worst].error && panels[i].order < panels[worst].order))
                worst = i;
        }
        Panel split = panels[worst];
        panels.erase(panels.begin() + static_cast<long>(worst));
        Real m = (split.a + split.b) / 2;
        push(split.a, m);
        push(m, split.b);
    }

    // final pass in fixed left-to-right order, independent of split history
    std::sort(panels.begin(), panels.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    QuadratureResult res;
    for (const Panel& p : panels) {
        res.value += p.value;
        res.error_estimate += p.error;
    }
    res.panels = static_cast<int>(panels.size());
    res.evaluations = evals;
    return res;
}

}  // namespace mixedpowers
