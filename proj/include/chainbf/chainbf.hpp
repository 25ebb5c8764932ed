#pragma once

#include "chainbf/asymptotics.hpp"
#include "chainbf/conjugate.hpp"
#include "chainbf/errors.hpp"
#include "chainbf/latent_chain.hpp"
#include "chainbf/priors.hpp"
#include "chainbf/rng.hpp"
#include "chainbf/special_fns.hpp"
#include "chainbf/tables.hpp"
#include "chainbf/version.hpp"
