#include "lop/replacement.hpp"

#include <stdexcept>
#include <utility>

#include "lop/rng.hpp"

namespace lop {

DiversitySchedule::DiversitySchedule(double d0, double total_budget,
                                     std::function<double()> elapsed)
    : d0_(d0), total_(total_budget), elapsed_(std::move(elapsed)) {
    if (!(total_ > 0.0))
        throw std::invalid_argument("diversity schedule needs a positive total budget");
    if (d0_ < 0.0) throw std::invalid_argument("initial threshold must be non-negative");
    if (!elapsed_) throw std::invalid_argument("diversity schedule needs an elapsed query");
}

DiversitySchedule DiversitySchedule::constant(double d) {
    return DiversitySchedule(d, 1.0, [] { return 0.0; });
}

double DiversitySchedule::current_threshold() const {
    double ratio = elapsed_() / total_;
    if (ratio < 0.0) ratio = 0.0;
    if (ratio > 1.0) ratio = 1.0;
    return d0_ * (1.0 - ratio);
}

namespace {

enum class State : std::uint8_t { Eligible, Penalized, Selected };

// Uniform pick among the tied argmax candidates; draws from the rng only
// when there is an actual tie, identically in both bnp_select forms.
template <typename Key>
std::size_t pick_argmax(const std::vector<std::size_t>& indices, Key key,
                        std::mt19937_64& rng) {
    auto best = key(indices[0]);
    std::vector<std::size_t> ties{indices[0]};
    for (std::size_t i = 1; i < indices.size(); ++i) {
        const auto k = key(indices[i]);
        if (k > best) {
            best = k;
            ties.assign(1, indices[i]);
        } else if (k == best) {
            ties.push_back(indices[i]);
        }
    }
    if (ties.size() == 1) return ties[0];
    return ties[uniform_index(rng, ties.size())];
}

std::vector<Individual> gather_candidates(Population&& pop, Population&& offspring,
                                          std::size_t n_survivors) {
    std::vector<Individual> cands;
    cands.reserve(pop.size() + offspring.size());
    for (Individual& ind : pop) cands.push_back(std::move(ind));
    for (Individual& ind : offspring) cands.push_back(std::move(ind));
    if (cands.size() < n_survivors)
        throw std::invalid_argument("fewer candidates than survivors requested");
    for (const Individual& ind : cands)
        if (ind.perm.size() != cands.front().perm.size())
            throw std::invalid_argument("replacement candidates must share one dimension");
    return cands;
}

std::vector<std::size_t> with_state(const std::vector<State>& state, State wanted) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < state.size(); ++i)
        if (state[i] == wanted) out.push_back(i);
    return out;
}

Population take_in_order(std::vector<Individual>& cands,
                         const std::vector<std::size_t>& picked) {
    Population survivors;
    survivors.reserve(picked.size());
    for (const std::size_t idx : picked) survivors.push_back(std::move(cands[idx]));
    return survivors;
}

} // namespace

Population bnp_select(Population pop, Population offspring, const DiversitySchedule& sched,
                      std::mt19937_64& rng, BnpTrace* trace) {
    const std::size_t n_survivors = pop.size();
    auto cands = gather_candidates(std::move(pop), std::move(offspring), n_survivors);

    const double threshold = sched.current_threshold();
    if (trace) {
        trace->threshold = threshold;
        trace->picks.clear();
    }

    std::vector<State> state(cands.size(), State::Eligible);
    for (Individual& c : cands) c.dci = kInfiniteDistance;

    // With a zero threshold nothing can ever be penalized and the dci
    // values never influence a pick, so the distance work is skipped
    // (kept when tracing, so traces always carry true distances).
    const bool maintain_distances = threshold > 0.0 || trace != nullptr;

    std::vector<std::size_t> picked;
    picked.reserve(n_survivors);
    while (picked.size() < n_survivors) {
        if (threshold > 0.0) {
            for (std::size_t i = 0; i < cands.size(); ++i)
                if (state[i] == State::Eligible &&
                    static_cast<double>(cands[i].dci) < threshold)
                    state[i] = State::Penalized;
        }

        const auto eligible = with_state(state, State::Eligible);
        std::size_t chosen;
        bool from_eligible;
        if (!eligible.empty()) {
            chosen = pick_argmax(eligible, [&](std::size_t i) { return cands[i].obj; }, rng);
            from_eligible = true;
        } else {
            const auto penalized = with_state(state, State::Penalized);
            chosen = pick_argmax(penalized, [&](std::size_t i) { return cands[i].dci; }, rng);
            from_eligible = false;
        }
        state[chosen] = State::Selected;
        if (trace) trace->picks.push_back({chosen, from_eligible, cands[chosen].dci});
        picked.push_back(chosen);

        if (maintain_distances && picked.size() < n_survivors) {
            const std::vector<int> inv = inverse_permutation(cands[chosen].perm);
            for (std::size_t i = 0; i < cands.size(); ++i) {
                if (state[i] == State::Selected) continue;
                const std::int64_t d = deviation_distance_via_inverse(cands[i].perm, inv);
                if (d < cands[i].dci) cands[i].dci = d;
            }
        }
    }
    return take_in_order(cands, picked);
}

Population bnp_select_literal(Population pop, Population offspring,
                              const DiversitySchedule& sched, std::mt19937_64& rng,
                              BnpTrace* trace) {
    const std::size_t n_survivors = pop.size();
    auto cands = gather_candidates(std::move(pop), std::move(offspring), n_survivors);

    const double threshold = sched.current_threshold();
    if (trace) {
        trace->threshold = threshold;
        trace->picks.clear();
    }

    std::vector<State> state(cands.size(), State::Eligible);
    for (Individual& c : cands) c.dci = kInfiniteDistance;

    std::vector<std::size_t> picked;
    picked.reserve(n_survivors);
    Population survivors_so_far; // working copies, for the full rescans
    while (picked.size() < n_survivors) {
        for (std::size_t i = 0; i < cands.size(); ++i) {
            if (state[i] != State::Eligible) continue;
            cands[i].dci = distance_to_closest(cands[i], survivors_so_far);
            if (static_cast<double>(cands[i].dci) < threshold) state[i] = State::Penalized;
        }

        const auto eligible = with_state(state, State::Eligible);
        std::size_t chosen;
        bool from_eligible;
        if (!eligible.empty()) {
            chosen = pick_argmax(eligible, [&](std::size_t i) { return cands[i].obj; }, rng);
            from_eligible = true;
        } else {
            const auto penalized = with_state(state, State::Penalized);
            for (const std::size_t i : penalized)
                cands[i].dci = distance_to_closest(cands[i], survivors_so_far);
            chosen = pick_argmax(penalized, [&](std::size_t i) { return cands[i].dci; }, rng);
            from_eligible = false;
        }
        state[chosen] = State::Selected;
        if (trace) trace->picks.push_back({chosen, from_eligible, cands[chosen].dci});
        picked.push_back(chosen);
        survivors_so_far.push_back(cands[chosen]);
    }
    return take_in_order(cands, picked);
}

} // namespace lop
