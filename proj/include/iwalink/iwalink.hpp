#pragma once

#include "iwalink/bigint.hpp"
#include "iwalink/covers.hpp"
#include "iwalink/cyclotomic_valuation.hpp"
#include "iwalink/error.hpp"
#include "iwalink/families.hpp"
#include "iwalink/growth.hpp"
#include "iwalink/intmatrix.hpp"
#include "iwalink/iwasawa.hpp"
#include "iwalink/json_io.hpp"
#include "iwalink/laurent.hpp"
#include "iwalink/parallel.hpp"
#include "iwalink/torus.hpp"
#include "iwalink/unipoly.hpp"
