#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "lfiqa/colorspace.hpp"
#include "lfiqa/tensor3.hpp"

namespace lfiqa {

enum class Orientation { deg0 = 0, deg45 = 1, deg90 = 2, deg135 = 3 };

inline constexpr std::array<Orientation, 4> kOrientations = {Orientation::deg0, Orientation::deg45,
                                                             Orientation::deg90, Orientation::deg135};

[[nodiscard]] std::string_view orientation_name(Orientation d);  // "0", "45", "90", "135"
[[nodiscard]] inline int orientation_index(Orientation d) { return static_cast<int>(d); }

struct AngularCoord {
    int s = 0;
    int t = 0;
    friend bool operator==(const AngularCoord&, const AngularCoord&) = default;
};

/// Views of one Lab channel along one orientation, stacked along mode 3.
struct ViewStack {
    Tensor3 data;  // X x Y x V
    Orientation orientation = Orientation::deg0;
    int channel = 1;
    std::vector<AngularCoord> coords;  // angular position of each view, in stack order

    [[nodiscard]] AngularCoord origin() const { return coords.front(); }
    [[nodiscard]] int length() const { return static_cast<int>(coords.size()); }
};

/// Angular coordinates of every chain of one orientation on an S x T grid.
///
/// Emission order:
///   0   : one chain per row s = 1..S, ordered by t
///   90  : one chain per column t = 1..T, ordered by s
///   45  : chains (s,t),(s+1,t+1),... starting at (S,1),(S-1,1),...,(1,1),(1,2),...,(1,T)
///   135 : chains (s,t),(s+1,t-1),... starting at (1,1),(1,2),...,(1,T),(2,T),...,(S,T)
/// The 135 degree chains are the anti-diagonals s+t = const in increasing order,
/// so their starts (1,1),(1,2)...(1,T),(2,T)... have end points (1,1),(2,1)...(S,1),(S,2)...(S,T).
[[nodiscard]] std::vector<std::vector<AngularCoord>> stack_coords(AngularSize grid, Orientation d);

/// Builds all stacks of one orientation from one channel grid.
[[nodiscard]] std::vector<ViewStack> build_stacks(const LabChannelGrid& channel_views, Orientation d,
                                                  int channel = 1);

/// Keeps stacks with at least min_len views, preserving order.
[[nodiscard]] std::vector<ViewStack> filter_usable(std::vector<ViewStack> stacks, int min_len);

}  // namespace lfiqa
