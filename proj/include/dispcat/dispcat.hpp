#pragma once

#include "dispcat/error.hpp"
#include "dispcat/report.hpp"
#include "dispcat/fincat.hpp"
#include "dispcat/core.hpp"
#include "dispcat/gaunt.hpp"
#include "dispcat/displayed.hpp"
#include "dispcat/constructions.hpp"
#include "dispcat/limits.hpp"
#include "dispcat/fibrations.hpp"
#include "dispcat/univalence.hpp"
#include "dispcat/compcat.hpp"
#include "dispcat/mutations.hpp"
#include "dispcat/dsl.hpp"
#include "dispcat/fixtures.hpp"
#include "dispcat/corpus.hpp"
#include "dispcat/random.hpp"
#include "dispcat/cli.hpp"
