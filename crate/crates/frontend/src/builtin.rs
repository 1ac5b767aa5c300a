//! Scenario files shipped with the binary.

pub const MECHANICS: &str = "\
# A point particle with an arbitrary Lagrangian L(q, q_t, t).
scenario mechanics
dim 1
hodge table (+)
star 1 = dx[t]
star dx[t] = 1
field q real
func L(q, q_t, t)
L = L(q, q_t, t)*dx[t]
theta = pd(L(q, q_t, t), q_t)*del(q)
killing time
  contract dx[t] = 1
  contract del(q) = -q_t
";

const KG_BODY: &str = "\
field phi complex phibar
const mu alpha
L = 1/2*d(phibar)^star(d(phi)) - 1/2*mu**2*star(phi*phibar)
theta = 1/2*del(phi)^star(d(phibar)) + 1/2*del(phibar)^star(d(phi))
";

const TABLE_2D: &str = "\
dim 2
hodge table (-,+)
star 1 = -dx[t]^dx[x]
star dx[t] = -dx[x]
star dx[x] = -dx[t]
star dx[t]^dx[x] = 1
";

const U1: &str = "\
killing u1
  contract del(phi) = i*alpha*phi
  conjugate
";

const TRANSLATION: &str = "\
killing translation
  contract dx[t] = At
  contract dx[x] = Ax
  contract del(phi) = -At*phi_t - Ax*phi_x
  contract del(phibar) = -At*phibar_t - Ax*phibar_x
";

const ONSHELL_2D: &str = "\
onshell phi_{t,t} = phi_{x,x} - mu**2*phi
onshell phibar_{t,t} = phibar_{x,x} - mu**2*phibar
";

pub fn kg2d() -> String {
    format!(
        "scenario kg2d\n{TABLE_2D}{KG_BODY}const At Ax\n{TRANSLATION}\
killing time
  contract dx[t] = 1
  contract del(phi) = -phi_t
  contract del(phibar) = -phibar_t
killing space
  contract dx[x] = 1
  contract del(phi) = -phi_x
  contract del(phibar) = -phibar_x
{U1}\
# rotates phi but not its conjugate: not a symmetry
killing phase-phi
  contract del(phi) = i*phi
  contract del(phibar) = 0
{ONSHELL_2D}"
    )
}

pub fn translation2d() -> String {
    format!("scenario translation2d\n{TABLE_2D}{KG_BODY}const At Ax\n{TRANSLATION}{ONSHELL_2D}")
}

pub fn kg_abstract() -> String {
    format!("scenario kg-abstract\ndim 4 parametric\nhodge abstract\n{KG_BODY}{U1}")
}

pub fn u1() -> String {
    format!("scenario u1\ndim 4 parametric\nhodge abstract\n{KG_BODY}{U1}")
}

pub const YANG_MILLS: &str = "\
scenario yangmills
dim 4 parametric
hodge abstract
gauge
L = -1/2*Tr(F^star(F))
theta = -Tr(del(Amat)^star(F))
killing gauge
  contract del(Amat) = -(d(Xi) + Amat^Xi - Xi^Amat)
";
