"""Built-in register of the sixteen climate transition risks."""

from dataclasses import dataclass

RISK_TYPES = ("Regulatory", "Technological", "Market", "Reputational")
CRITERIA = ("Vulnerability", "Resilience", "Exposure", "Likelihood", "Impact")

# Questionnaire section holding each risk type's ratings.
SECTION_OF_TYPE = {"Regulatory": 2, "Technological": 3, "Market": 4, "Reputational": 5}


@dataclass(frozen=True)
class RiskDescriptor:
    code: str
    risk_type: str
    name: str
    description: str


REGISTRY = (
    RiskDescriptor("Rreg1", "Regulatory", "Cap and trade schemes",
                   "Emission trading systems with pre-established caps in which companies trade emissions"),
    RiskDescriptor("Rreg2", "Regulatory", "Carbon tax increase",
                   "Regulatory strategy to reduce greenhouse gas emissions from companies"),
    RiskDescriptor("Rreg3", "Regulatory", "Climate change-related litigation",
                   "Legal exposure for non-compliance with climate responsibilities, including harm to people or the environment"),
    RiskDescriptor("Rreg4", "Regulatory", "Obligation to report emissions",
                   "Mandatory disclosure of greenhouse gas emissions and identification of excess emissions"),
    RiskDescriptor("RT1", "Technological", "Shift to less carbon-intensive production or consumption patterns",
                   "Use of fuels with lower emission factors for thermal energy generation"),
    RiskDescriptor("RT2", "Technological", "Technological progress in renewable energies and energy efficiency",
                   "Investments aimed at reducing the carbon footprint that do not meet expectations"),
    RiskDescriptor("RT3", "Technological", "Technological change (development of new technology)",
                   "New technology that enables improved outcomes in the company's energy processes"),
    RiskDescriptor("RT4", "Technological", "Failed investments in new technologies to reduce emissions",
                   "Low-emission technologies rendered obsolete or uncompetitive (stranded assets)"),
    RiskDescriptor("RM1", "Market", "Change in the demand for products and services",
                   "Demand shifts driven by concern about climate change"),
    RiskDescriptor("RM2", "Market", "Raw materials and supplies (price volatility and availability)",
                   "Climate-related changes in price, demand and volatility affecting raw material supply"),
    RiskDescriptor("RM3", "Market", "Stakeholder concerns on climate change",
                   "Concern among market stakeholders, government and social groups creating uncertainty"),
    RiskDescriptor("RM4", "Market", "Poor adaptation to change in customers' behaviour",
                   "Business models slow to adapt to customer needs and behaviour regarding climate change"),
    RiskDescriptor("Rrep1", "Reputational", "Changes in customer preferences",
                   "Loss of, or change in, preference for the company's products"),
    RiskDescriptor("Rrep2", "Reputational", "Increasing pressure from non-governmental organisations",
                   "NGO pressure on environmentally harmful activities attracting media attention"),
    RiskDescriptor("Rrep3", "Reputational", "Negative news and comments about the company",
                   "Environmental news coverage affecting shareholder value"),
    RiskDescriptor("Rrep4", "Reputational", "Changes in market sentiment due to potential future climate risks",
                   "Sentiment shifts from awareness of climate issues the future may hold"),
)

RISK_CODES = tuple(r.code for r in REGISTRY)
_BY_CODE = {r.code: r for r in REGISTRY}


def get_risk(code):
    return _BY_CODE[code]


def risks_of_type(risk_type):
    return tuple(r for r in REGISTRY if r.risk_type == risk_type)
