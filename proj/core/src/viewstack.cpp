#include "lfiqa/viewstack.hpp"

#include <algorithm>

#include "lfiqa/error.hpp"

namespace lfiqa {

std::string_view orientation_name(Orientation d) {
    switch (d) {
        case Orientation::deg0: return "0";
        case Orientation::deg45: return "45";
        case Orientation::deg90: return "90";
        case Orientation::deg135: return "135";
    }
    return "?";
}

std::vector<std::vector<AngularCoord>> stack_coords(AngularSize grid, Orientation d) {
    const int S = grid.s;
    const int T = grid.t;
    if (S <= 0 || T <= 0) throw ContractError("angular grid must be positive");
    std::vector<std::vector<AngularCoord>> chains;
    auto walk = [&](int s, int t, int ds, int dt) {
        std::vector<AngularCoord> c;
        for (; s >= 1 && s <= S && t >= 1 && t <= T; s += ds, t += dt) c.push_back({s, t});
        chains.push_back(std::move(c));
    };
    switch (d) {
        case Orientation::deg0:
            for (int s = 1; s <= S; ++s) walk(s, 1, 0, 1);
            break;
        case Orientation::deg90:
            for (int t = 1; t <= T; ++t) walk(1, t, 1, 0);
            break;
        case Orientation::deg45:
            for (int s = S; s >= 1; --s) walk(s, 1, 1, 1);
            for (int t = 2; t <= T; ++t) walk(1, t, 1, 1);
            break;
        case Orientation::deg135:
            for (int t = 1; t <= T; ++t) walk(1, t, 1, -1);
            for (int s = 2; s <= S; ++s) walk(s, T, 1, -1);
            break;
    }
    return chains;
}

std::vector<ViewStack> build_stacks(const LabChannelGrid& channel_views, Orientation d, int channel) {
    const AngularSize grid = channel_views.angular;
    if (channel_views.views.size() != static_cast<std::size_t>(grid.s) * static_cast<std::size_t>(grid.t)) {
        throw ContractError("channel grid is incomplete");
    }
    std::vector<ViewStack> stacks;
    for (auto& chain : stack_coords(grid, d)) {
        std::vector<Plane> planes;
        planes.reserve(chain.size());
        for (const auto& c : chain) planes.push_back(channel_views.view(c.s, c.t));
        ViewStack vs;
        vs.data = Tensor3::from_slices(planes);
        vs.orientation = d;
        vs.channel = channel;
        vs.coords = std::move(chain);
        stacks.push_back(std::move(vs));
    }
    return stacks;
}

std::vector<ViewStack> filter_usable(std::vector<ViewStack> stacks, int min_len) {
    if (min_len < 1) throw ContractError("min_len must be at least 1");
    std::erase_if(stacks, [min_len](const ViewStack& s) { return s.length() < min_len; });
    return stacks;
}

}  // namespace lfiqa
