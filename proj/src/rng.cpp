#include "letterfeat/rng.hpp"

namespace letterfeat {

__extension__ using Uint128 = unsigned __int128;

std::size_t Rng::below(std::size_t n)
{
    // The bias of a single 64x64 multiply-shift is below 2^-50 for the n used
    // here (dataset sizes), and it keeps the one-draw-per-call contract.
    const Uint128 wide = static_cast<Uint128>(engine_()) * n;
    return static_cast<std::size_t>(wide >> 64);
}

}  // namespace letterfeat
