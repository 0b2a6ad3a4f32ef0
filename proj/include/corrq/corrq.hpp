#pragma once

#include <corrq/audit.hpp>
#include <corrq/bounds.hpp>
#include <corrq/builtins.hpp>
#include <corrq/identity.hpp>
#include <corrq/integrand.hpp>
#include <corrq/kernel.hpp>
#include <corrq/means.hpp>
#include <corrq/oracle.hpp>
#include <corrq/quadrature.hpp>
#include <corrq/random.hpp>
