//! Synthetic models for scale tests and benchmarks.
//!
//! A model is a chain of independent care scenarios ("households"), each
//! declaring 41 elements with the usual proportion of uses, permissions,
//! delegations, threats and treatments. Every seventh household leaves a
//! delegation unadopted and reads without permission so the privacy
//! checks have something to report.

use std::fmt::Write;

/// Elements declared by one household.
pub const ELEMENTS_PER_HOUSEHOLD: usize = 41;

/// CML text with at least `elements` elements (rounded up to whole
/// households). Deterministic.
pub fn synthetic_model(elements: usize) -> String {
    let households = elements.div_ceil(ELEMENTS_PER_HOUSEHOLD).max(1);
    let mut out = String::with_capacity(households * 3_000);
    out.push_str("model \"synthetic\"\n");
    for k in 0..households {
        household(&mut out, k);
    }
    out
}

fn household(out: &mut String, k: usize) {
    let faulty = k % 7 == 6;
    let _ = write!(
        out,
        "\
role Patient_{k}
role CareStaff_{k}
role Nurse_{k} is_a CareStaff_{k}
role Physician_{k}
role GeneralPractitioner_{k} is_a Physician_{k}
role ConsultingPhysician_{k} is_a Physician_{k}
role PersonalAssistant_{k}
agent Patient{k} plays Patient_{k}
agent Nurse{k} plays Nurse_{k}
agent Pda{k} plays PersonalAssistant_{k}
agent Gp{k} plays GeneralPractitioner_{k}
agent Consultant{k} plays ConsultingPhysician_{k}
agent Intruder{k}
info Vitals_{k} personal {{ owner Patient{k} sensitivity C }}
info Glucose_{k} personal {{ owner Patient{k} sensitivity S }} partOf Vitals_{k}
info Location_{k} personal {{ owner Patient{k} sensitivity R }}
info Health_{k} personal {{ owner Patient{k} sensitivity C }}
info Weather_{k} public
situation Bathroom_{k} determines Location_{k} R
goal Live_{k} aimedBy Patient{k} {{ and [Daily_{k}, Diabetes_{k}] }}
goal Daily_{k}
goal Diabetes_{k}
goal Assess_{k} aimedBy Pda{k}
goal Care_{k} aimedBy Nurse{k} {{ or [Health_{k}Watch, Activity_{k}Watch] }}
goal Health_{k}Watch
goal Activity_{k}Watch
goal Treat_{k} aimedBy Gp{k}
goal Consult_{k} aimedBy Consultant{k}
describes Location_{k} Daily_{k}
use Diabetes_{k} produce Glucose_{k}
use Assess_{k} read Vitals_{k}
use Assess_{k} read Weather_{k}
use Health_{k}Watch read Glucose_{k}
use Activity_{k}Watch collect Location_{k}
use Treat_{k} read Health_{k}
use Treat_{k} modify Health_{k}
use Consult_{k} read Health_{k}
permission PdaRead_{k} read over Vitals_{k} heldBy PersonalAssistant_{k}
permission NurseCollect_{k} collect over Location_{k} heldBy Nurse{k}
permission GpRead_{k} read over Health_{k} heldBy GeneralPractitioner_{k}
permission GpModify_{k} modify over Health_{k} heldBy Gp{k}
permission ConsultRead_{k} read over Health_{k} heldBy Consultant{k}
provision ProvHealth_{k} of Health_{k} from Gp{k} to Consultant{k} confidential
provision ProvVitals_{k} of Vitals_{k} from Pda{k} to Nurse{k} confidential
delegate permission DelCollect_{k} from Patient{k} to Nurse{k} of NurseCollect_{k}
trust TrustCollect_{k} from Patient{k} to Nurse{k} on permission NurseCollect_{k} level trust
delegate goal DelTreat_{k} from Nurse{k} to Gp{k} of Treat_{k}
adopt Gp{k} DelTreat_{k}
vulnerability V_{k} on Glucose_{k}
attackmethod Am_{k}
threat intentional Ti_{k} {{ threatens Glucose_{k} exploits V_{k} actor Intruder{k} method Am_{k} impact severity M over Glucose_{k} }}
threat incidental Tc_{k} {{ threatens Glucose_{k} exploits V_{k} probability L impact severity H over Glucose_{k} }}
privacygoal Anon_{k} mitigates V_{k} realizedBy Pc1_{k}, Pol_{k}
privacygoal Unlink_{k} mitigates V_{k} realizedBy Pc2_{k}
policy Pol_{k}
mechanism Pc1_{k} capability anonymize appliedTo Glucose_{k}
mechanism Pc2_{k} capability unlink appliedTo Glucose_{k}
requirement anonymity Rq1_{k} concerning Glucose_{k} interpretedBy Anon_{k}
requirement unlinkability Rq2_{k} concerning Glucose_{k} interpretedBy Unlink_{k}
requirement unobservability Rq3_{k} concerning Health_{k}
"
    );
    if faulty {
        let _ = writeln!(out, "requirement confidentiality Rq4_{k} concerning Vitals_{k}");
    } else {
        let _ = writeln!(out, "adopt Nurse{k} DelCollect_{k}");
        let _ = writeln!(out, "permission NurseRead_{k} read over Glucose_{k} heldBy Nurse{k}");
        let _ = writeln!(out, "requirement confidentiality Rq4_{k} concerning Vitals_{k}");
    }
}
