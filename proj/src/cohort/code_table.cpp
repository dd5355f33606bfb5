#include "pkgraph/code_table.hpp"

#include <algorithm>
#include <utility>

namespace pkgraph::codes {
namespace {

struct Row {
  const char* code;
  const char* description;
};

struct SubRow {
  const char* code;
  const char* description;
};

// Diagnosis families, most frequent first.
constexpr Row kDiagnosisRows[] = {
    {"401", "essential hypertension"},
    {"427", "cardiac dysrhythmias"},
    {"428", "heart failure"},
    {"276", "disorders of fluid electrolyte and acid-base balance"},
    {"414", "other forms of chronic ischemic heart disease"},
    {"272", "disorders of lipoid metabolism"},
    {"250", "diabetes mellitus"},
    {"584", "acute kidney failure"},
    {"518", "other diseases of lung"},
    {"285", "other and unspecified anemias"},
    {"599", "other disorders of urethra and urinary tract"},
    {"486", "pneumonia organism unspecified"},
    {"496", "chronic airway obstruction not elsewhere classified"},
    {"403", "hypertensive chronic kidney disease"},
    {"995", "certain adverse effects not elsewhere classified"},
    {"038", "septicemia"},
    {"585", "chronic kidney disease"},
    {"244", "acquired hypothyroidism"},
    {"530", "diseases of esophagus"},
    {"311", "depressive disorder not elsewhere classified"},
    {"410", "acute myocardial infarction"},
    {"424", "other diseases of endocardium"},
    {"305", "nondependent abuse of drugs"},
    {"412", "old myocardial infarction"},
    {"997", "complications affecting specified body systems"},
    {"998", "other complications of procedures"},
    {"287", "purpura and other hemorrhagic conditions"},
    {"780", "general symptoms"},
    {"493", "asthma"},
    {"458", "hypotension"},
    {"V45", "other postprocedural states"},
    {"V58", "encounter for other and unspecified procedures and aftercare"},
    {"E878", "surgical operation as the cause of abnormal reaction"},
    {"E849", "place of occurrence"},
    {"V10", "personal history of malignant neoplasm"},
    {"V15", "other personal history presenting hazards to health"},
    {"V12", "personal history of certain other diseases"},
    {"V43", "organ or tissue replaced by other means"},
    {"V49", "other conditions influencing health status"},
    {"274", "gout"},
    {"396", "diseases of mitral and aortic valves"},
    {"397", "diseases of other endocardial structures"},
    {"398", "other rheumatic heart disease"},
    {"402", "hypertensive heart disease"},
    {"404", "hypertensive heart and chronic kidney disease"},
    {"411", "other acute and subacute forms of ischemic heart disease"},
    {"413", "angina pectoris"},
    {"415", "acute pulmonary heart disease"},
    {"416", "chronic pulmonary heart disease"},
    {"420", "acute pericarditis"},
    {"421", "acute and subacute endocarditis"},
    {"423", "other diseases of pericardium"},
    {"425", "cardiomyopathy"},
    {"426", "conduction disorders"},
    {"429", "ill-defined descriptions and complications of heart disease"},
    {"430", "subarachnoid hemorrhage"},
    {"431", "intracerebral hemorrhage"},
    {"432", "other and unspecified intracranial hemorrhage"},
    {"433", "occlusion and stenosis of precerebral arteries"},
    {"434", "occlusion of cerebral arteries"},
    {"435", "transient cerebral ischemia"},
    {"436", "acute but ill-defined cerebrovascular disease"},
    {"437", "other and ill-defined cerebrovascular disease"},
    {"438", "late effects of cerebrovascular disease"},
    {"440", "atherosclerosis"},
    {"441", "aortic aneurysm and dissection"},
    {"442", "other aneurysm"},
    {"443", "other peripheral vascular disease"},
    {"444", "arterial embolism and thrombosis"},
    {"447", "other disorders of arteries and arterioles"},
    {"451", "phlebitis and thrombophlebitis"},
    {"453", "other venous embolism and thrombosis"},
    {"455", "hemorrhoids"},
    {"456", "varicose veins of other sites"},
    {"459", "other disorders of circulatory system"},
    {"480", "viral pneumonia"},
    {"481", "pneumococcal pneumonia"},
    {"482", "other bacterial pneumonia"},
    {"483", "pneumonia due to other specified organism"},
    {"485", "bronchopneumonia organism unspecified"},
    {"487", "influenza"},
    {"490", "bronchitis not specified as acute or chronic"},
    {"491", "chronic bronchitis"},
    {"492", "emphysema"},
    {"494", "bronchiectasis"},
    {"507", "pneumonitis due to solids and liquids"},
    {"510", "empyema"},
    {"511", "pleurisy"},
    {"512", "pneumothorax"},
    {"514", "pulmonary congestion and hypostasis"},
    {"515", "postinflammatory pulmonary fibrosis"},
    {"516", "other alveolar and parietoalveolar pneumonopathy"},
    {"519", "other diseases of respiratory system"},
    {"008", "intestinal infections due to other organisms"},
    {"009", "ill-defined intestinal infections"},
    {"041", "bacterial infection in conditions classified elsewhere"},
    {"042", "human immunodeficiency virus disease"},
    {"070", "viral hepatitis"},
    {"112", "candidiasis"},
    {"117", "other mycoses"},
    {"136", "other and unspecified infectious and parasitic diseases"},
    {"150", "malignant neoplasm of esophagus"},
    {"151", "malignant neoplasm of stomach"},
    {"153", "malignant neoplasm of colon"},
    {"155", "malignant neoplasm of liver and intrahepatic bile ducts"},
    {"157", "malignant neoplasm of pancreas"},
    {"162", "malignant neoplasm of trachea bronchus and lung"},
    {"174", "malignant neoplasm of female breast"},
    {"185", "malignant neoplasm of prostate"},
    {"188", "malignant neoplasm of bladder"},
    {"189", "malignant neoplasm of kidney and other urinary organs"},
    {"191", "malignant neoplasm of brain"},
    {"196", "secondary malignant neoplasm of lymph nodes"},
    {"197", "secondary malignant neoplasm of respiratory and digestive systems"},
    {"198", "secondary malignant neoplasm of other specified sites"},
    {"202", "other malignant neoplasms of lymphoid and histiocytic tissue"},
    {"203", "multiple myeloma and immunoproliferative neoplasms"},
    {"204", "lymphoid leukemia"},
    {"205", "myeloid leukemia"},
    {"211", "benign neoplasm of other parts of digestive system"},
    {"225", "benign neoplasm of brain and other parts of nervous system"},
    {"238", "neoplasm of uncertain behavior of other and unspecified sites"},
    {"239", "neoplasms of unspecified nature"},
    {"240", "simple and unspecified goiter"},
    {"241", "nontoxic nodular goiter"},
    {"242", "thyrotoxicosis with or without goiter"},
    {"245", "thyroiditis"},
    {"246", "other disorders of thyroid"},
    {"251", "other disorders of pancreatic internal secretion"},
    {"253", "disorders of the pituitary gland"},
    {"255", "disorders of adrenal glands"},
    {"261", "nutritional marasmus"},
    {"263", "other and unspecified protein-calorie malnutrition"},
    {"266", "deficiency of b-complex components"},
    {"268", "vitamin d deficiency"},
    {"269", "other nutritional deficiencies"},
    {"270", "disorders of amino-acid transport and metabolism"},
    {"271", "disorders of carbohydrate transport and metabolism"},
    {"273", "disorders of plasma protein metabolism"},
    {"275", "disorders of mineral metabolism"},
    {"277", "other and unspecified disorders of metabolism"},
    {"278", "overweight obesity and other hyperalimentation"},
    {"279", "disorders involving the immune mechanism"},
    {"280", "iron deficiency anemias"},
    {"281", "other deficiency anemias"},
    {"282", "hereditary hemolytic anemias"},
    {"283", "acquired hemolytic anemias"},
    {"284", "aplastic anemia and other bone marrow failure syndromes"},
    {"286", "coagulation defects"},
    {"288", "diseases of white blood cells"},
    {"289", "other diseases of blood and blood-forming organs"},
    {"290", "dementias"},
    {"291", "alcohol-induced mental disorders"},
    {"292", "drug-induced mental disorders"},
    {"293", "transient mental disorders due to conditions classified elsewhere"},
    {"294", "persistent mental disorders due to conditions classified elsewhere"},
    {"295", "schizophrenic disorders"},
    {"296", "episodic mood disorders"},
    {"298", "other nonorganic psychoses"},
    {"300", "anxiety dissociative and somatoform disorders"},
    {"303", "alcohol dependence syndrome"},
    {"304", "drug dependence"},
    {"307", "special symptoms or syndromes not elsewhere classified"},
    {"309", "adjustment reaction"},
    {"320", "bacterial meningitis"},
    {"324", "intracranial and intraspinal abscess"},
    {"331", "other cerebral degenerations"},
    {"332", "parkinsons disease"},
    {"333", "other extrapyramidal disease and abnormal movement disorders"},
    {"335", "anterior horn cell disease"},
    {"337", "disorders of the autonomic nervous system"},
    {"338", "pain not elsewhere classified"},
    {"340", "multiple sclerosis"},
    {"342", "hemiplegia and hemiparesis"},
    {"344", "other paralytic syndromes"},
    {"345", "epilepsy and recurrent seizures"},
    {"348", "other conditions of brain"},
    {"349", "other and unspecified disorders of the nervous system"},
    {"356", "hereditary and idiopathic peripheral neuropathy"},
    {"357", "inflammatory and toxic neuropathy"},
    {"358", "myoneural disorders"},
    {"362", "other retinal disorders"},
    {"365", "glaucoma"},
    {"366", "cataract"},
    {"369", "blindness and low vision"},
    {"386", "vertiginous syndromes"},
    {"389", "hearing loss"},
    {"394", "diseases of mitral valve"},
    {"395", "diseases of aortic valve"},
    {"531", "gastric ulcer"},
    {"532", "duodenal ulcer"},
    {"533", "peptic ulcer site unspecified"},
    {"535", "gastritis and duodenitis"},
    {"536", "disorders of function of stomach"},
    {"537", "other disorders of stomach and duodenum"},
    {"550", "inguinal hernia"},
    {"553", "other hernia of abdominal cavity without obstruction"},
    {"556", "ulcerative colitis"},
    {"557", "vascular insufficiency of intestine"},
    {"558", "other noninfectious gastroenteritis and colitis"},
    {"560", "intestinal obstruction without mention of hernia"},
    {"562", "diverticula of intestine"},
    {"564", "functional digestive disorders not elsewhere classified"},
    {"567", "peritonitis and retroperitoneal infections"},
    {"569", "other disorders of intestine"},
    {"570", "acute and subacute necrosis of liver"},
    {"571", "chronic liver disease and cirrhosis"},
    {"572", "liver abscess and sequelae of chronic liver disease"},
    {"573", "other disorders of liver"},
    {"574", "cholelithiasis"},
    {"575", "other disorders of gallbladder"},
    {"576", "other disorders of biliary tract"},
    {"577", "diseases of pancreas"},
    {"578", "gastrointestinal hemorrhage"},
    {"579", "intestinal malabsorption"},
    {"580", "acute glomerulonephritis"},
    {"581", "nephrotic syndrome"},
    {"583", "nephritis and nephropathy not specified as acute or chronic"},
    {"586", "renal failure unspecified"},
    {"588", "disorders resulting from impaired renal function"},
    {"590", "infections of kidney"},
    {"591", "hydronephrosis"},
    {"592", "calculus of kidney and ureter"},
    {"593", "other disorders of kidney and ureter"},
    {"596", "other disorders of bladder"},
    {"597", "urethritis not sexually transmitted"},
    {"600", "hyperplasia of prostate"},
    {"601", "inflammatory diseases of prostate"},
    {"611", "other disorders of breast"},
    {"617", "endometriosis"},
    {"618", "genital prolapse"},
    {"625", "pain and other symptoms associated with female genital organs"},
    {"682", "other cellulitis and abscess"},
    {"686", "other local infections of skin and subcutaneous tissue"},
    {"692", "contact dermatitis and other eczema"},
    {"693", "dermatitis due to substances taken internally"},
    {"707", "chronic ulcer of skin"},
    {"710", "diffuse diseases of connective tissue"},
    {"711", "arthropathy associated with infections"},
    {"714", "rheumatoid arthritis and other inflammatory polyarthropathies"},
    {"715", "osteoarthrosis and allied disorders"},
    {"716", "other and unspecified arthropathies"},
    {"719", "other and unspecified disorders of joint"},
    {"722", "intervertebral disc disorders"},
    {"724", "other and unspecified disorders of back"},
    {"728", "disorders of muscle ligament and fascia"},
    {"729", "other disorders of soft tissues"},
    {"730", "osteomyelitis periostitis and other infections involving bone"},
    {"733", "other disorders of bone and cartilage"},
    {"737", "curvature of spine"},
    {"745", "bulbus cordis anomalies and anomalies of cardiac septal closure"},
    {"746", "other congenital anomalies of heart"},
    {"747", "other congenital anomalies of circulatory system"},
    {"753", "congenital anomalies of urinary system"},
    {"781", "symptoms involving nervous and musculoskeletal systems"},
    {"782", "symptoms involving skin and other integumentary tissue"},
    {"783", "symptoms concerning nutrition metabolism and development"},
    {"784", "symptoms involving head and neck"},
    {"785", "symptoms involving cardiovascular system"},
    {"786", "symptoms involving respiratory system and other chest symptoms"},
    {"787", "symptoms involving digestive system"},
    {"788", "symptoms involving urinary system"},
    {"789", "other symptoms involving abdomen and pelvis"},
    {"790", "nonspecific findings on examination of blood"},
    {"791", "nonspecific findings on examination of urine"},
    {"793", "nonspecific abnormal findings on radiological examination"},
    {"794", "nonspecific abnormal results of function studies"},
    {"796", "other nonspecific abnormal findings"},
    {"799", "other ill-defined and unknown causes of morbidity and mortality"},
    {"800", "fracture of vault of skull"},
    {"801", "fracture of base of skull"},
    {"805", "fracture of vertebral column without spinal cord injury"},
    {"807", "fracture of rib sternum larynx and trachea"},
    {"808", "fracture of pelvis"},
    {"812", "fracture of humerus"},
    {"820", "fracture of neck of femur"},
    {"823", "fracture of tibia and fibula"},
    {"850", "concussion"},
    {"851", "cerebral laceration and contusion"},
    {"852", "subarachnoid subdural and extradural hemorrhage following injury"},
    {"853", "other and unspecified intracranial hemorrhage following injury"},
    {"854", "intracranial injury of other and unspecified nature"},
    {"860", "traumatic pneumothorax and hemothorax"},
    {"861", "injury to heart and lung"},
    {"864", "injury to liver"},
    {"865", "injury to spleen"},
    {"873", "other open wound of head"},
    {"920", "contusion of face scalp and neck"},
    {"922", "contusion of trunk"},
    {"924", "contusion of lower limb and of other and unspecified sites"},
    {"934", "foreign body in trachea bronchus and lung"},
    {"958", "certain early complications of trauma"},
    {"965", "poisoning by analgesics antipyretics and antirheumatics"},
    {"969", "poisoning by psychotropic agents"},
    {"972", "poisoning by agents primarily affecting the cardiovascular system"},
    {"977", "poisoning by other and unspecified drugs and medicinal substances"},
    {"980", "toxic effect of alcohol"},
    {"996", "complications peculiar to certain specified procedures"},
    {"999", "complications of medical care not elsewhere classified"},
    {"V02", "carrier or suspected carrier of infectious diseases"},
    {"V08", "asymptomatic human immunodeficiency virus infection status"},
    {"V09", "infection with drug-resistant microorganisms"},
    {"V17", "family history of certain chronic disabling diseases"},
    {"V42", "organ or tissue replaced by transplant"},
    {"V44", "artificial opening status"},
    {"V46", "other dependence on machines and devices"},
    {"V50", "elective surgery for purposes other than remedying health states"},
    {"V53", "fitting and adjustment of other device"},
    {"V54", "other orthopedic aftercare"},
    {"V55", "attention to artificial openings"},
    {"V62", "other psychosocial circumstances"},
    {"V64", "persons encountering health services for procedures not carried out"},
    {"V66", "convalescence and palliative care"},
    {"V85", "body mass index"},
    {"V87", "other specified personal exposures presenting hazards to health"},
    {"V88", "acquired absence of other organs and tissue"},
    {"E812", "motor vehicle traffic accident involving collision with motor vehicle"},
    {"E816", "motor vehicle traffic accident due to loss of control"},
    {"E819", "motor vehicle traffic accident of unspecified nature"},
    {"E850", "accidental poisoning by analgesics antipyretics and antirheumatics"},
    {"E870", "accidental cut puncture perforation or hemorrhage during medical care"},
    {"E879", "other procedures as the cause of abnormal reaction"},
    {"E880", "accidental fall on or from stairs or steps"},
    {"E884", "other accidental falls from one level to another"},
    {"E885", "fall on same level from slipping tripping or stumbling"},
    {"E888", "other and unspecified fall"},
    {"E917", "striking against or struck accidentally by objects or persons"},
    {"E930", "antibiotics causing adverse effects in therapeutic use"},
    {"E932", "hormones and synthetic substitutes causing adverse effects"},
    {"E933", "primarily systemic agents causing adverse effects"},
    {"E934", "agents primarily affecting blood constituents causing adverse effects"},
    {"E935", "analgesics causing adverse effects in therapeutic use"},
    {"E942", "cardiovascular agents causing adverse effects in therapeutic use"},
    {"E944", "water mineral and uric acid metabolism drugs causing adverse effects"},
    {"E947", "other drugs and medicinal substances causing adverse effects"},
    {"E950", "suicide and self-inflicted poisoning by solid or liquid substances"},
    {"E956", "suicide and self-inflicted injury by cutting and piercing instruments"},
    {"E965", "assault by firearms and explosives"},
    {"E966", "assault by cutting and piercing instrument"},
    {"E968", "assault by other and unspecified means"},
};

// Hand-written subcategories; every other family gets generated ones.
constexpr SubRow kDiagnosisSubRows[] = {
    {"410.0", "acute myocardial infarction of anterolateral wall"},
    {"410.1", "acute myocardial infarction of other anterior wall"},
    {"410.2", "acute myocardial infarction of inferolateral wall"},
    {"410.3", "acute myocardial infarction of inferoposterior wall"},
    {"410.4", "acute myocardial infarction of other inferior wall"},
    {"410.7", "subendocardial infarction"},
    {"410.9", "acute myocardial infarction of unspecified site"},
    {"427.0", "paroxysmal supraventricular tachycardia"},
    {"427.1", "paroxysmal ventricular tachycardia"},
    {"427.31", "atrial fibrillation"},
    {"427.32", "atrial flutter"},
    {"427.41", "ventricular fibrillation"},
    {"427.5", "cardiac arrest"},
    {"427.89", "other specified cardiac dysrhythmias"},
    {"427.9", "cardiac dysrhythmia unspecified"},
    {"428.0", "congestive heart failure unspecified"},
    {"428.1", "left heart failure"},
    {"428.21", "acute systolic heart failure"},
    {"428.22", "chronic systolic heart failure"},
    {"428.23", "acute on chronic systolic heart failure"},
    {"428.31", "acute diastolic heart failure"},
    {"428.32", "chronic diastolic heart failure"},
    {"428.41", "acute combined systolic and diastolic heart failure"},
    {"428.9", "heart failure unspecified"},
    {"V45.01", "cardiac pacemaker in situ"},
    {"V45.1", "renal dialysis status"},
    {"V45.81", "aortocoronary bypass status"},
    {"V45.82", "percutaneous transluminal coronary angioplasty status"},
};

constexpr Row kProcedureRows[] = {
    {"3893", "venous catheterization not elsewhere classified"},
    {"9604", "insertion of endotracheal tube"},
    {"9671", "continuous invasive mechanical ventilation for less than 96 hours"},
    {"3961", "extracorporeal circulation auxiliary to open heart surgery"},
    {"9904", "transfusion of packed cells"},
    {"9672", "continuous invasive mechanical ventilation for 96 hours or more"},
    {"3722", "left heart cardiac catheterization"},
    {"8856", "coronary arteriography using two catheters"},
    {"9915", "parenteral infusion of concentrated nutritional substances"},
    {"3891", "arterial catheterization"},
    {"3615", "single internal mammary-coronary artery bypass"},
    {"3995", "hemodialysis"},
    {"9390", "non-invasive mechanical ventilation"},
    {"4311", "percutaneous endoscopic gastrostomy"},
    {"0066", "percutaneous transluminal coronary angioplasty"},
    {"3607", "insertion of drug-eluting coronary artery stent"},
    {"8872", "diagnostic ultrasound of heart"},
    {"3612", "aortocoronary bypass of two coronary arteries"},
    {"3613", "aortocoronary bypass of three coronary arteries"},
    {"9905", "transfusion of platelets"},
    {"9907", "transfusion of other serum"},
    {"3723", "combined right and left heart cardiac catheterization"},
    {"8853", "angiocardiography of left heart structures"},
    {"3324", "closed endoscopic biopsy of bronchus"},
    {"0040", "procedure on single vessel"},
    {"0045", "insertion of one vascular stent"},
    {"3404", "insertion of intercostal catheter for drainage"},
    {"5491", "percutaneous abdominal drainage"},
    {"9607", "insertion of other gastric tube"},
    {"3491", "thoracentesis"},
    {"9955", "prophylactic administration of vaccine against other diseases"},
    {"8938", "other nonoperative respiratory measurements"},
    {"3322", "fiber-optic bronchoscopy"},
    {"4513", "other endoscopy of small intestine"},
    {"4516", "esophagogastroduodenoscopy with closed biopsy"},
    {"4523", "colonoscopy"},
    {"5011", "closed percutaneous biopsy of liver"},
    {"8741", "computerized axial tomography of thorax"},
    {"8703", "computerized axial tomography of head"},
    {"8801", "computerized axial tomography of abdomen"},
    {"8891", "magnetic resonance imaging of brain and brain stem"},
    {"3521", "replacement of aortic valve with tissue graft"},
    {"3524", "replacement of mitral valve with tissue graft"},
    {"3512", "open heart valvuloplasty of mitral valve without replacement"},
    {"3733", "excision or destruction of other lesion or tissue of heart"},
    {"3778", "insertion of temporary transvenous pacemaker system"},
    {"3783", "initial insertion of dual-chamber device"},
    {"3794", "implantation or replacement of automatic cardioverter defibrillator"},
    {"9962", "other electric countershock of heart"},
    {"9960", "cardiopulmonary resuscitation not otherwise specified"},
    {"3734", "excision or destruction of lesion of heart by catheter ablation"},
    {"3761", "implant of pulsation balloon"},
    {"3768", "insertion of percutaneous external heart assist device"},
    {"3772", "initial insertion of transvenous leads into atrium and ventricle"},
    {"3726", "catheter based invasive electrophysiologic testing"},
    {"3727", "cardiac mapping"},
    {"8964", "pulmonary artery wedge monitoring"},
    {"8962", "central venous pressure monitoring"},
    {"8965", "measurement of systemic arterial blood gases"},
    {"3129", "other permanent tracheostomy"},
    {"3142", "laryngoscopy and other tracheoscopy"},
    {"3327", "closed endoscopic biopsy of lung"},
    {"3328", "open biopsy of lung"},
    {"3895", "venous catheterization for renal dialysis"},
    {"3897", "central venous catheter placement with guidance"},
    {"3927", "arteriovenostomy for renal dialysis"},
    {"3950", "angioplasty of other non-coronary vessels"},
    {"3990", "insertion of non-drug-eluting peripheral vessel stent"},
    {"3979", "other endovascular procedures on other vessels"},
    {"3845", "resection of thoracic vessel with replacement"},
    {"3844", "resection of abdominal aorta with replacement"},
    {"3812", "endarterectomy of other vessels of head and neck"},
    {"0131", "incision of cerebral meninges"},
    {"0139", "other incision of brain"},
    {"0159", "other excision or destruction of lesion or tissue of brain"},
    {"0221", "insertion or replacement of external ventricular drain"},
    {"0331", "spinal tap"},
    {"8102", "other cervical fusion"},
    {"8151", "total hip replacement"},
    {"8152", "partial hip replacement"},
    {"7935", "open reduction of femur fracture with internal fixation"},
    {"8154", "total knee replacement"},
    {"4562", "other partial resection of small intestine"},
    {"4573", "open and other right hemicolectomy"},
    {"4576", "open and other sigmoidectomy"},
    {"4591", "small-to-small intestinal anastomosis"},
    {"4601", "exteriorization of small intestine"},
    {"4610", "colostomy not otherwise specified"},
    {"4443", "endoscopic control of gastric or duodenal bleeding"},
    {"4233", "endoscopic excision or destruction of lesion of esophagus"},
    {"5110", "endoscopic retrograde cholangiopancreatography"},
    {"5123", "laparoscopic cholecystectomy"},
    {"5187", "endoscopic insertion of stent into bile duct"},
    {"5459", "other lysis of peritoneal adhesions"},
    {"5411", "exploratory laparotomy"},
    {"5421", "laparoscopy"},
    {"5794", "insertion of indwelling urinary catheter"},
    {"5732", "other cystoscopy"},
    {"5503", "percutaneous nephrostomy without fragmentation"},
    {"5569", "other kidney transplantation"},
    {"5059", "other transplant of liver"},
    {"4131", "biopsy of bone marrow"},
    {"8605", "incision with removal of foreign body from skin"},
    {"8622", "excisional debridement of wound infection or burn"},
    {"8628", "nonexcisional debridement of wound infection or burn"},
    {"8659", "closure of skin and subcutaneous tissue of other sites"},
    {"8604", "other incision with drainage of skin and subcutaneous tissue"},
    {"3409", "other incision of pleura"},
    {"3451", "decortication of lung"},
    {"3229", "other local excision or destruction of lesion of lung"},
    {"3249", "other lobectomy of lung"},
    {"9394", "respiratory medication administered by nebulizer"},
    {"9396", "other oxygen enrichment"},
    {"9921", "injection of antibiotic"},
    {"9920", "injection or infusion of platelet inhibitor"},
    {"9910", "injection or infusion of thrombolytic agent"},
    {"9918", "injection or infusion of electrolytes"},
    {"9925", "injection or infusion of cancer chemotherapeutic substance"},
    {"9929", "injection or infusion of other therapeutic substance"},
    {"9914", "injection or infusion of immunoglobulin"},
    {"9971", "therapeutic plasmapheresis"},
    {"9984", "isolation"},
    {"9339", "other physical therapy"},
    {"9462", "alcohol detoxification"},
    {"0017", "infusion of vasopressor agent"},
    {"0014", "injection or infusion of oxazolidinone class of antibiotics"},
    {"0013", "injection or infusion of nesiritide"},
    {"0050", "implantation of cardiac resynchronization pacemaker"},
    {"0051", "implantation of cardiac resynchronization defibrillator"},
    {"0061", "percutaneous angioplasty of precerebral vessels"},
    {"8848", "arteriography of femoral and other lower extremity arteries"},
    {"8847", "arteriography of other intra-abdominal arteries"},
    {"8842", "aortography"},
    {"8844", "arteriography of other intrathoracic vessels"},
    {"8841", "arteriography of cerebral arteries"},
    {"8877", "diagnostic ultrasound of peripheral vascular system"},
    {"8876", "diagnostic ultrasound of abdomen and retroperitoneum"},
    {"8744", "routine chest x-ray"},
    {"9229", "other radiotherapeutic procedure"},
};

constexpr const char* kMedications[] = {
    "furosemide", "metoprolol tartrate", "aspirin", "heparin sodium",
    "insulin", "potassium chloride", "acetaminophen", "docusate sodium",
    "pantoprazole", "atorvastatin", "simvastatin", "lisinopril", "warfarin",
    "amiodarone", "digoxin", "diltiazem", "carvedilol", "spironolactone",
    "hydralazine", "nitroglycerin", "clopidogrel", "enoxaparin",
    "magnesium sulfate", "calcium gluconate", "sodium bicarbonate",
    "vancomycin", "piperacillin tazobactam", "ceftriaxone", "levofloxacin",
    "metronidazole", "ciprofloxacin", "cefazolin", "morphine sulfate",
    "fentanyl citrate", "hydromorphone", "oxycodone", "lorazepam",
    "haloperidol", "quetiapine", "propofol", "midazolam", "norepinephrine",
    "phenylephrine", "vasopressin", "dopamine", "dobutamine", "albuterol",
    "ipratropium bromide", "prednisone", "methylprednisolone",
    "hydrocortisone", "levothyroxine", "omeprazole", "famotidine",
    "ondansetron", "metoclopramide", "senna", "bisacodyl", "lactulose",
    "polyethylene glycol", "allopurinol", "gabapentin", "sertraline",
    "citalopram", "trazodone", "tamsulosin", "finasteride", "folic acid",
    "thiamine", "multivitamin", "ferrous sulfate", "cyanocobalamin",
    "cholecalciferol", "glucagon", "metformin", "glipizide", "amlodipine",
    "losartan", "valsartan", "torsemide", "bumetanide", "chlorothiazide",
    "nesiritide", "milrinone", "labetalol", "esmolol", "adenosine",
    "atropine", "lidocaine", "argatroban", "alteplase",
};

// Qualifiers for generated subcategories. Suffix digit and phrase pair up.
constexpr std::pair<const char*, const char*> kQualifiers[] = {
    {"0", "unspecified"},       {"1", "acute"},
    {"2", "chronic"},           {"3", "with complication"},
    {"4", "without complication"}, {"8", "other specified"},
    {"9", "not otherwise specified"},
};

std::vector<Family> build_families(std::span<const Row> rows,
                                   std::span<const SubRow> explicit_subs) {
  std::vector<Family> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Family f;
    f.code = rows[i].code;
    f.description = rows[i].description;
    for (const auto& s : explicit_subs) {
      std::string_view sc = s.code;
      if (sc.substr(0, sc.find('.')) == f.code) {
        f.subcodes.emplace_back(s.code);
        f.subcode_descriptions.emplace_back(s.description);
      }
    }
    if (f.subcodes.empty()) {
      // 2 to 4 generated subcategories, chosen by table position.
      const std::size_t n = 2 + (i * 7 + 3) % 3;
      for (std::size_t k = 0; k < n; ++k) {
        const auto& [suffix, phrase] =
            kQualifiers[(i + k * 3) % std::size(kQualifiers)];
        std::string code = f.code + "." + suffix;
        if (std::find(f.subcodes.begin(), f.subcodes.end(), code) !=
            f.subcodes.end())
          continue;
        f.subcodes.push_back(std::move(code));
        f.subcode_descriptions.push_back(f.description + " " + phrase);
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

const std::vector<Family>& diagnosis_table() {
  static const std::vector<Family> table =
      build_families(kDiagnosisRows, kDiagnosisSubRows);
  return table;
}

const std::vector<Family>& procedure_table() {
  static const std::vector<Family> table = build_families(kProcedureRows, {});
  return table;
}

std::optional<std::string> lookup(const std::vector<Family>& table,
                                  std::string_view family) {
  for (const auto& f : table)
    if (f.code == family) return f.description;
  return std::nullopt;
}

std::vector<std::string> to_strings(std::initializer_list<const char*> items) {
  return {items.begin(), items.end()};
}

}  // namespace

std::span<const Family> diagnosis_families() { return diagnosis_table(); }
std::span<const Family> procedure_families() { return procedure_table(); }

std::span<const std::string> medication_names() {
  static const std::vector<std::string> names(std::begin(kMedications),
                                              std::end(kMedications));
  return names;
}

std::optional<std::string> diagnosis_family_description(std::string_view family) {
  return lookup(diagnosis_table(), family);
}

std::optional<std::string> procedure_family_description(std::string_view family) {
  return lookup(procedure_table(), family);
}

std::span<const std::string> genders() {
  static const auto v = to_strings({"female", "male"});
  return v;
}

std::span<const std::string> religions() {
  static const auto v =
      to_strings({"catholic", "protestant quaker", "jewish", "episcopalian",
                  "greek orthodox", "buddhist", "muslim", "christian scientist",
                  "other religion"});
  return v;
}

std::span<const std::string> marital_statuses() {
  static const auto v = to_strings(
      {"married", "single", "widowed", "divorced", "separated", "life partner"});
  return v;
}

std::span<const std::string> ethnicities() {
  static const auto v = to_strings(
      {"white", "black african american", "hispanic or latino", "asian",
       "american indian alaska native", "multi race ethnicity",
       "other ethnicity"});
  return v;
}

std::span<const std::string> employment_statuses() {
  static const auto v =
      to_strings({"employed", "unemployed", "retired", "disabled", "student"});
  return v;
}

std::span<const std::string> housing_conditions() {
  static const auto v =
      to_strings({"homeless", "lives in shelter", "stable housing",
                  "assisted living facility", "nursing home resident"});
  return v;
}

std::span<const std::string> household_compositions() {
  static const auto v =
      to_strings({"lives alone", "lives with spouse", "lives with family",
                  "lives with children", "lives with roommate"});
  return v;
}

}  // namespace pkgraph::codes
