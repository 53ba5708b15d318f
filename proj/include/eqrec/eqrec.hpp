#pragma once

#include "eqrec/algebra.hpp"
#include "eqrec/errors.hpp"
#include "eqrec/group_action.hpp"
#include "eqrec/homology.hpp"
#include "eqrec/instance.hpp"
#include "eqrec/linalg.hpp"
#include "eqrec/module.hpp"
#include "eqrec/quiver.hpp"
#include "eqrec/recollement.hpp"
#include "eqrec/report.hpp"
#include "eqrec/scalar.hpp"
#include "eqrec/skew_group.hpp"
#include "eqrec/triangular.hpp"
