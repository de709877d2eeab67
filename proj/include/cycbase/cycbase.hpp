#pragma once

#include "errors.hpp"
#include "perm.hpp"
#include "bsgs.hpp"
#include "group.hpp"
#include "families.hpp"
#include "blocks.hpp"
#include "primitive.hpp"
#include "feasible.hpp"
#include "control.hpp"
#include "cycle_base.hpp"
#include "oracle.hpp"
#include "corpus.hpp"
#include "io.hpp"
#include "selftest.hpp"
