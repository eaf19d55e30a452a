#pragma once

#include "ateb/lambda_sigma.hpp"
#include "ateb/lambda_sigma_n.hpp"
#include "ateb/lambda_upsilon.hpp"
#include "ateb/lambda_x.hpp"
#include "ateb/technique.hpp"

namespace ateb::checks {

// The calculi as the technique pipelines see them.  lx feeds the direct
// pipeline; the others have the simulation fields filled in, with B strict
// and the substitution rules lax.
technique::Bundle<lx::System, NamedEnv> lx_bundle();
technique::Bundle<lu::System, DbEnv> lu_bundle();
technique::Bundle<ls::System, DbEnv> ls_bundle();
technique::Bundle<lsn::System, NamedEnv> lsn_bundle();

}  // namespace ateb::checks
