package edu.ncsu.csc.itrust;

/**
 * Immunization given to a patient.
 */
public class ImmunizationRecord {
	private String immunization;
	private String patient;

	public String getImmunization() {
		return immunization;
	}

	public String getPatient() {
		return patient;
	}
}
